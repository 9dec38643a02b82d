#include "ppto/engine/ppto_engine.hpp"

int main()
{
    ppto::contacts::Contact c{};
    return static_cast<int>(c.u);
}
