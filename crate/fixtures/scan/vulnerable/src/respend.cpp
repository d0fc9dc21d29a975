#include "respend.h"

bool CTxMemPool::CheckRespend(const CTransaction& tx, const COutPoint& outpoint)
{
    LOCK(cs);
    if (mapNextTx.count(outpoint) == 0)
        return false;
    UpdateCoins(tx, inputs);
    return true;
}
