#include "net_processing.h"

bool SendMessages(CNode* pto)
{
    if (pto->fDisconnect)
        return true;
    CNodeState *state = State(pto->GetId());
    if (state->fSyncStarted && state->nHeadersSyncTimeout > 0) {
        if (pindexBestHeader->GetBlockTime() <= GetAdjustedTime() - 24 * 60 * 60) {
            if (nNow > state->nHeadersSyncTimeout && nSyncStarted == 1) {
                pto->fDisconnect = true;
                return true;
            }
        }
    }
    SendPings(pto);
    return true;
}
