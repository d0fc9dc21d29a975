#include "blockchain.h"

bool Blockchain::check_block_timestamp(std::vector<uint64_t>& timestamps, const block& b)
{
    LOG_PRINT_L3("Blockchain::check_block_timestamp");
    uint64_t median_ts = epee::misc_utils::median(timestamps);
    m_timestamps_height.push_back(b.timestamp);
    return true;
}
