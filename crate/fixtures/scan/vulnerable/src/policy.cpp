#include "policy.h"

bool CTransaction::IsStandard() const
{
    if (nVersion > CTransaction::CURRENT_VERSION)
        return false;
    if (!IsFinal())
        return false;
    BOOST_FOREACH(const CTxIn& txin, vin)
    {
        if (txin.scriptSig.size() > 500)
            return false;
    }
    return true;
}
