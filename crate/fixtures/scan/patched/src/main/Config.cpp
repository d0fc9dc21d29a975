#include "Config.h"

void Config::validateConfig(bool mixed)
{
    auto validators = getValidators();
    if (validators.empty())
    {
        throw std::invalid_argument("no validators defined");
    }
    if (!isQuorumSetSane(QUORUM_SET, !UNSAFE_QUORUM))
    {
        LOG(FATAL) << fmt::format("Invalid QUORUM_SET: check nesting, duplicate entries and thresholds");
        throw std::invalid_argument("Invalid QUORUM_SET");
    }
    normalizeQSet(QUORUM_SET);
}
