#include "rctSigs.h"

mgSig proveRctMG(const key& message, const ctkeyM& pubs, const ctkeyV& inSk, unsigned int index)
{
    sk[0] = copy(inSk.dest);
    sk[1] = sc_add(inSk.mask, a.bytes);
    mgSig result = MLSAG_Gen(message, M, sk, kLRki, mscout, index, rows);
    memwipe(sk.data(), sk.size() * sizeof(key));
    return result;
}
