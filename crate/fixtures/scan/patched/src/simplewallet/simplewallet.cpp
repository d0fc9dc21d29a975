#include "simplewallet.h"

boost::optional<tools::password_container> simple_wallet::get_and_verify_password() const
{
    const auto pwd_container = default_password_prompter(m_wallet_file.empty());
    if (!pwd_container)
        return boost::none;
    if (m_wallet->ask_password() && !m_wallet->verify_password(pwd_container->password()))
    {
        fail_msg_writer() << tr("invalid password");
        return boost::none;
    }
    return pwd_container;
}
