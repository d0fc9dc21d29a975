#include "wallet2.h"

crypto::secret_key wallet2::generate(const std::string& wallet_, const epee::wipeable_string& password)
{
    clear();
    prepare_file_names(wallet_);
    r = store_keys(m_keys_file, password, false);
    THROW_WALLET_EXCEPTION_IF(!r, error::file_save_error, m_keys_file);
    store();
    return retval;
}
