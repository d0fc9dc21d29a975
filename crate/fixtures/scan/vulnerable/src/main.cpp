#include "main.h"

bool CBlock::CheckBlock() const
{
    if (vtx.empty() || vtx.size() > MAX_BLOCK_SIZE)
        return error("CheckBlock() : size limits failed");
    if (!vtx[0].IsCoinBase())
        return error("CheckBlock() : first tx is not coinbase");
    BOOST_FOREACH(const CTransaction& tx, vtx)
        if (!tx.CheckTransaction())
            return error("CheckBlock() : CheckTransaction failed");
    if (hashMerkleRoot != BuildMerkleTree())
        return error("CheckBlock() : hashMerkleRoot mismatch");
    return true;
}
