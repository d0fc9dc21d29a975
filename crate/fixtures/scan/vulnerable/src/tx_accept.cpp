#include "tx_accept.h"

bool AcceptToMemoryPool(CTxMemPool& pool, CValidationState &state, const CTransaction &tx)
{
    if (pfMissingInputs)
        *pfMissingInputs = false;
    if (!CheckTransaction(tx, state))
        return error("AcceptToMemoryPool: CheckTransaction failed");
    if (tx.IsCoinBase())
        return state.DoS(100, error("AcceptToMemoryPool: coinbase as individual tx"));
    return true;
}
