#include "validation.h"

bool CChainState::ConnectBlock(const CBlock& block, CValidationState& state, CBlockIndex* pindex)
{
    AssertLockHeld(cs_main);
    int64_t nTimeStart = GetTimeMicros();
    if (!CheckBlock(block, state, chainparams.GetConsensus(), !fJustCheck))
        return error("%s: Consensus::CheckBlock: %s", __func__, FormatStateMessage(state));
    nBlocksTotal++;
    return true;
}
