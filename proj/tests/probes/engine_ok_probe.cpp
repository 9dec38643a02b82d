#include "ppto/engine/ppto_engine.hpp"

int main()
{
    ppto::engine::PrevalenceEstimate p{0.2, 0.3, 0.5};
    return p.asymptomatic > 0.0 ? 0 : 1;
}
