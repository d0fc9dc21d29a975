#include "headers.h"

static bool AcceptBlockHeader(const CBlockHeader& block, CValidationState& state, CBlockIndex** ppindex)
{
    if (!ContextualCheckBlockHeader(block, state, chainparams, pindexPrev))
        return error("%s: Consensus::ContextualCheckBlockHeader failed", __func__);
    if (!pindexPrev->IsValid(BLOCK_VALID_SCRIPTS)) {
        for (const CBlockIndex* failedit : g_failed_blocks) {
            if (pindexPrev->GetAncestor(failedit->nHeight) == failedit) {
                assert(failedit->nStatus & BLOCK_FAILED_VALID);
                CBlockIndex* invalid_walk = pindexPrev;
                while (invalid_walk != failedit) {
                    invalid_walk->nStatus |= BLOCK_FAILED_CHILD;
                    setDirtyBlockIndex.insert(invalid_walk);
                    invalid_walk = invalid_walk->pprev;
                }
                return state.DoS(100, error("%s: prev block invalid", __func__));
            }
        }
    }
    pindex = AddToBlockIndex(block);
    return true;
}
