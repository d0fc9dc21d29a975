#include "Config.h"

void Config::validateConfig(bool mixed)
{
    auto validators = getValidators();
    if (validators.empty())
    {
        throw std::invalid_argument("no validators defined");
    }
    normalizeQSet(QUORUM_SET);
}
