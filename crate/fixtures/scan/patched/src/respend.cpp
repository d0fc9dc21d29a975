#include "respend.h"

bool CTxMemPool::CheckRespend(const CTransaction& tx, const COutPoint& outpoint)
{
    LOCK(cs);
    if (mapNextTx.count(outpoint) == 0)
        return false;
    bool fIsRespend = false;
    if (RelayableRespend(outpoint, tx, fInBlock))
        fIsRespend = true;
    UpdateCoins(tx, inputs);
    return true;
}
