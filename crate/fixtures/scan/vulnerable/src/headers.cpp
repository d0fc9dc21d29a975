#include "headers.h"

static bool AcceptBlockHeader(const CBlockHeader& block, CValidationState& state, CBlockIndex** ppindex)
{
    if (!ContextualCheckBlockHeader(block, state, chainparams, pindexPrev))
        return error("%s: Consensus::ContextualCheckBlockHeader failed", __func__);
    pindex = AddToBlockIndex(block);
    return true;
}
