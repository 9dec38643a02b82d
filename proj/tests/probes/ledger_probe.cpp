#include "ppto/engine/ppto_engine.hpp"

int main()
{
    ppto::epidemic::PopulationLedger ledger(10, 0.9, 1.0);
    return static_cast<int>(ledger.size());
}
