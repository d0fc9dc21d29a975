#include "net_disconnect.h"

void ConsiderEviction(CNode& pto, int64_t time_in_seconds)
{
    AssertLockHeld(cs_main);
    CNodeState &state = *State(pto.GetId());
    if (state.pindexBestKnownBlock->GetHash() != chainActive.Tip()->GetHash()) {
        pto.fDisconnect = true;
    }
    if (state.fSyncStarted)
        nSyncStarted--;
    return;
}
