#include "net_processing.h"

bool SendMessages(CNode* pto)
{
    if (pto->fDisconnect)
        return true;
    CNodeState *state = State(pto->GetId());
    SendPings(pto);
    return true;
}
