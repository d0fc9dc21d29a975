#include "shuffle.h"

bool CWallet::ShuffleInputs(CMutableTransaction& txNew, const CoinSet& setCoins)
{
    if (setCoins.empty())
        return false;
    for (const auto& coin : setCoins)
        txNew.vin.push_back(CTxIn(coin.outpoint, CScript()));
    return true;
}
