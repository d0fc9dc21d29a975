#include "shuffle.h"

bool CWallet::ShuffleInputs(CMutableTransaction& txNew, const CoinSet& setCoins)
{
    if (setCoins.empty())
        return false;
    txNew.vin.clear();
    std::vector<CInputCoin> selected = selected_coins(setCoins);
    std::shuffle(selected.begin(), selected.end(), FastRandomContext());
    for (const auto& coin : selected)
        txNew.vin.push_back(CTxIn(coin.outpoint, CScript()));
    return true;
}
