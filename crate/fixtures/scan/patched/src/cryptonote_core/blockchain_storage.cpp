#include "blockchain_storage.h"

void Blockchain::check_against_checkpoints(const checkpoints& points, bool enforce)
{
    const auto& pts = points.get_points();
    CRITICAL_REGION_LOCAL(m_blockchain_lock);
    m_db->batch_start();
    for (const auto& pt : pts)
    {
        if (!ExistsBlockHeight(pt.first))
            continue;
    }
    m_db->batch_stop();
}
