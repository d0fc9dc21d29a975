#!/usr/bin/env python3
"""Generates the vulnerable/patched scan fixture trees and the parts
manifest that the signature freezer consumes. Each pattern is one function:
the patched tree carries the patch block, the vulnerable tree the pre-patch
form. Run from the repository root."""

import json
import os

P = []


def pattern(pid, desc, provenance, lang, path, func_sig, close, globs, funcs,
            pre, patch, post, vuln_only=None, anchor=None, vuln_sig=None):
    P.append({
        "id": pid, "description": desc, "provenance": provenance,
        "lang": lang, "path": path, "func_sig": func_sig, "close": close,
        "globs": globs, "funcs": funcs,
        "pre": pre, "patch": patch, "post": post,
        "vuln_only": vuln_only or [],
        # Lines whose signatures form the anchor / vulnerable signatures.
        "anchor_lines": anchor, "vuln_lines": vuln_sig,
    })


GO_CLOSE = ["}"]
C_CLOSE = ["}"]

pattern(
    "P1", "Check the transaction sender address", "Ethereum #272",
    "go", "core/transaction_pool.go",
    ["func (pool *TxPool) ValidateTransaction(tx *types.Transaction) error {"], GO_CLOSE,
    ["**/transaction_pool.go"], ["ValidateTransaction"],
    pre=[
        "\tv, _, _ := tx.Curve()",
        "\tif v > 28 || v < 27 {",
        "\t\treturn fmt.Errorf(\"tx.v != (28 || 27) = %v\", v)",
        "\t}",
    ],
    patch=[
        "\tsenderAddr := tx.From()",
        "\tif senderAddr == nil || len(senderAddr) != 20 {",
        "\t\treturn fmt.Errorf(\"invalid sender\")",
        "\t}",
    ],
    post=[
        "\ttotAmount := new(big.Int).Set(tx.Value)",
        "\tif tx.GasLimit == nil {",
        "\t\treturn fmt.Errorf(\"missing gas limit\")",
        "\t}",
        "\treturn nil",
    ],
    anchor=["\tv, _, _ := tx.Curve()", "\tif v > 28 || v < 27 {",
            "\t\treturn fmt.Errorf(\"x\")"],
    vuln_sig=["\tif v > 28 {", "\t\treturn fmt.Errorf(\"x\")",
              "\ttotAmount := new(big.Int).Set(tx.Value)",
              "\tif tx.GasLimit == nil {"],
)

pattern(
    "P2", "Check the size of transactions in a pool", "Bitcoin #2273",
    "c-family", "src/policy.cpp",
    ["bool CTransaction::IsStandard() const", "{"], C_CLOSE,
    ["**/policy.cpp"], ["IsStandard"],
    pre=[
        "    if (nVersion > CTransaction::CURRENT_VERSION)",
        "        return false;",
        "    if (!IsFinal())",
        "        return false;",
    ],
    patch=[
        "    unsigned int sz = this->GetSerializeSize(SER_NETWORK, PROTOCOL_VERSION);",
        "    if (sz >= MAX_STANDARD_TX_SIZE)",
        "        return false;",
    ],
    post=[
        "    BOOST_FOREACH(const CTxIn& txin, vin)",
        "    {",
        "        if (txin.scriptSig.size() > 500)",
        "            return false;",
        "    }",
        "    return true;",
    ],
    anchor=["    if (!IsFinal())", "        return false;"],
    vuln_sig=["    if (!IsFinal())", "        return false;",
              "    BOOST_FOREACH(const CTxIn& txin, vin)",
              "        if (txin.scriptSig.size() > 500)"],
)

pattern(
    "P3", "Shuffle the transaction order against fingerprinting", "Bitcoin #12699",
    "c-family", "src/wallet/shuffle.cpp",
    ["bool CWallet::ShuffleInputs(CMutableTransaction& txNew, const CoinSet& setCoins)", "{"], C_CLOSE,
    ["**/shuffle.cpp"], ["ShuffleInputs"],
    pre=[
        "    if (setCoins.empty())",
        "        return false;",
    ],
    patch=[
        "    txNew.vin.clear();",
        "    std::vector<CInputCoin> selected = selected_coins(setCoins);",
        "    std::shuffle(selected.begin(), selected.end(), FastRandomContext());",
        "    for (const auto& coin : selected)",
        "        txNew.vin.push_back(CTxIn(coin.outpoint, CScript()));",
    ],
    vuln_only=[
        "    for (const auto& coin : setCoins)",
        "        txNew.vin.push_back(CTxIn(coin.outpoint, CScript()));",
    ],
    post=[
        "    return true;",
    ],
    anchor=["    if (setCoins.empty())", "        return false;"],
    vuln_sig=["        return false;", "    for (const auto& coin : setCoins)",
              "        txNew.vin.push_back(CTxIn(coin.outpoint, CScript()));",
              "    return true;"],
)

pattern(
    "P4", "Prevent the duplicated transaction", "Bitcoin #1167",
    "c-family", "src/main.cpp",
    ["bool CBlock::CheckBlock() const", "{"], C_CLOSE,
    ["**/main.cpp"], ["CheckBlock"],
    pre=[
        "    if (vtx.empty() || vtx.size() > MAX_BLOCK_SIZE)",
        "        return error(\"CheckBlock() : size limits failed\");",
        "    if (!vtx[0].IsCoinBase())",
        "        return error(\"CheckBlock() : first tx is not coinbase\");",
        "    BOOST_FOREACH(const CTransaction& tx, vtx)",
        "        if (!tx.CheckTransaction())",
        "            return error(\"CheckBlock() : CheckTransaction failed\");",
    ],
    patch=[
        "    set<uint256> uniqueTx;",
        "    BOOST_FOREACH(const CTransaction& tx, vtx)",
        "    {",
        "        uniqueTx.insert(tx.GetHash());",
        "    }",
        "    if (uniqueTx.size() != vtx.size())",
        "        return DoS(100, error(\"CheckBlock() : duplicate transaction\"));",
    ],
    post=[
        "    if (hashMerkleRoot != BuildMerkleTree())",
        "        return error(\"CheckBlock() : hashMerkleRoot mismatch\");",
        "    return true;",
    ],
    anchor=["    BOOST_FOREACH(const CTransaction& tx, vtx)",
            "        if (!tx.CheckTransaction())",
            "            return error(\"x\");"],
    vuln_sig=["        if (!tx.CheckTransaction())", "            return error(\"x\");",
              "    if (hashMerkleRoot != BuildMerkleTree())"],
)

pattern(
    "P5", "Prevent the malformed transaction", "Bitcoin #8312",
    "c-family", "src/tx_accept.cpp",
    ["bool AcceptToMemoryPool(CTxMemPool& pool, CValidationState &state, const CTransaction &tx)", "{"], C_CLOSE,
    ["**/tx_accept.cpp"], ["AcceptToMemoryPool"],
    pre=[
        "    if (pfMissingInputs)",
        "        *pfMissingInputs = false;",
        "    if (!CheckTransaction(tx, state))",
        "        return error(\"AcceptToMemoryPool: CheckTransaction failed\");",
    ],
    patch=[
        "    string reason;",
        "    if (fRequireStandard && !IsStandardTx(tx, reason))",
        "        return state.DoS(0, error(\"AcceptToMemoryPool: nonstandard transaction\"));",
    ],
    post=[
        "    if (tx.IsCoinBase())",
        "        return state.DoS(100, error(\"AcceptToMemoryPool: coinbase as individual tx\"));",
        "    return true;",
    ],
    anchor=["    if (!CheckTransaction(tx, state))", "        return error(\"x\");"],
    vuln_sig=["    if (!CheckTransaction(tx, state))", "        return error(\"x\");",
              "    if (tx.IsCoinBase())"],
)

pattern(
    "P6", "Prevent the double-spent transaction relay", "Bitcoin #4514",
    "c-family", "src/respend.cpp",
    ["bool CTxMemPool::CheckRespend(const CTransaction& tx, const COutPoint& outpoint)", "{"], C_CLOSE,
    ["**/respend.cpp"], ["CheckRespend"],
    pre=[
        "    LOCK(cs);",
        "    if (mapNextTx.count(outpoint) == 0)",
        "        return false;",
    ],
    patch=[
        "    bool fIsRespend = false;",
        "    if (RelayableRespend(outpoint, tx, fInBlock))",
        "        fIsRespend = true;",
    ],
    post=[
        "    UpdateCoins(tx, inputs);",
        "    return true;",
    ],
    anchor=["    LOCK(cs);", "    if (mapNextTx.count(outpoint) == 0)",
            "        return false;"],
    vuln_sig=["    if (mapNextTx.count(outpoint) == 0)", "        return false;",
              "    UpdateCoins(tx, inputs);", "    return true;"],
)

pattern(
    "P7", "Validate the new header not from an invalid block", "Bitcoin #11531",
    "c-family", "src/headers.cpp",
    ["static bool AcceptBlockHeader(const CBlockHeader& block, CValidationState& state, CBlockIndex** ppindex)", "{"], C_CLOSE,
    ["**/headers.cpp"], ["AcceptBlockHeader"],
    pre=[
        "    if (!ContextualCheckBlockHeader(block, state, chainparams, pindexPrev))",
        "        return error(\"%s: Consensus::ContextualCheckBlockHeader failed\", __func__);",
    ],
    patch=[
        "    if (!pindexPrev->IsValid(BLOCK_VALID_SCRIPTS)) {",
        "        for (const CBlockIndex* failedit : g_failed_blocks) {",
        "            if (pindexPrev->GetAncestor(failedit->nHeight) == failedit) {",
        "                assert(failedit->nStatus & BLOCK_FAILED_VALID);",
        "                CBlockIndex* invalid_walk = pindexPrev;",
        "                while (invalid_walk != failedit) {",
        "                    invalid_walk->nStatus |= BLOCK_FAILED_CHILD;",
        "                    setDirtyBlockIndex.insert(invalid_walk);",
        "                    invalid_walk = invalid_walk->pprev;",
        "                }",
        "                return state.DoS(100, error(\"%s: prev block invalid\", __func__));",
        "            }",
        "        }",
        "    }",
    ],
    post=[
        "    pindex = AddToBlockIndex(block);",
        "    return true;",
    ],
    anchor=["    if (!ContextualCheckBlockHeader(block, state, chainparams, pindexPrev))",
            "        return error(\"x\");"],
    vuln_sig=["    if (!ContextualCheckBlockHeader(block, state, chainparams, pindexPrev))",
              "        return error(\"x\");",
              "    pindex = AddToBlockIndex(block);",
              "    return true;"],
)

pattern(
    "P8", "Check the gas limit in a block header", "Ethereum #389",
    "go", "core/block_validator.go",
    ["func (sm *BlockProcessor) ValidateBlock(block, parent *types.Block) error {"], GO_CLOSE,
    ["**/block_validator.go"], ["ValidateBlock"],
    pre=[
        "\tif len(block.Header().Extra) > 1024 {",
        "\t\treturn fmt.Errorf(\"Block extra data too long\")",
        "\t}",
    ],
    patch=[
        "\texpl := CalcGasLimit(parent, block)",
        "\tif expl.Cmp(block.Header().GasLimit) != 0 {",
        "\t\treturn fmt.Errorf(\"GasLimit check failed for block\")",
        "\t}",
    ],
    post=[
        "\tif block.Time() < parent.Time() {",
        "\t\treturn ValidationError(\"Block timestamp not after prev block\")",
        "\t}",
        "\treturn nil",
    ],
    anchor=["\tif len(block.Header().Extra) > 1024 {", "\t\treturn fmt.Errorf(\"x\")"],
    vuln_sig=["\tif len(x) > 1024 {", "\t\treturn fmt.Errorf(\"x\")",
              "\tif block.Time() < parent.Time() {",
              "\t\treturn ValidationError(\"x\")"],
)

pattern(
    "P9", "Check the block timestamp", "Monero #5902",
    "c-family", "src/cryptonote_core/blockchain.cpp",
    ["bool Blockchain::check_block_timestamp(std::vector<uint64_t>& timestamps, const block& b)", "{"], C_CLOSE,
    ["**/blockchain.cpp"], ["check_block_timestamp"],
    pre=[
        "    LOG_PRINT_L3(\"Blockchain::check_block_timestamp\");",
        "    uint64_t median_ts = epee::misc_utils::median(timestamps);",
    ],
    patch=[
        "    uint64_t top_ts = (uint64_t)time(NULL);",
        "    if (b.timestamp < median_ts)",
        "    {",
        "        return false;",
        "    }",
    ],
    post=[
        "    m_timestamps_height.push_back(b.timestamp);",
        "    return true;",
    ],
    anchor=["    LOG_PRINT_L3(\"x\");", "    uint64_t median_ts = epee::misc_utils::median(timestamps);"],
    vuln_sig=["    LOG_PRINT_L3(\"x\");", "    uint64_t m = median(t);",
              "    m_timestamps_height.push_back(b.timestamp);",
              "    return true;"],
)

pattern(
    "P10", "Validate block fields (number and hash) not null", "Ethereum #1354",
    "go", "eth/gasprice.go",
    ["func (gpo *GasPriceOracle) processBlock() {"], GO_CLOSE,
    ["**/gasprice.go"], ["processBlock"],
    pre=[
        "\tif gpo.eventmux == nil {",
        "\t\treturn",
        "\t}",
        "\tgpo.lastBase = new(big.Int)",
    ],
    patch=[
        "\trecent := gpo.chain.GetBlockByNumber(gpo.lastProcessed)",
        "\tif recent == nil {",
        "\t\treturn",
        "\t}",
    ],
    post=[
        "\tgpo.firstProcessed = gpo.lastProcessed",
        "\tgpo.updateGasPrice()",
    ],
    anchor=["\tif gpo.eventmux == nil {", "\t\treturn", "\tgpo.lastBase = new(big.Int)"],
    vuln_sig=["\tif gpo.eventmux == nil {", "\t\treturn", "\tgpo.lastBase = new(big.Int)",
              "\tgpo.firstProcessed = gpo.lastProcessed", "\tgpo.updateGasPrice()"],
)

pattern(
    "P11", "Do not connect a corrupted block", "Bitcoin #12561",
    "c-family", "src/validation.cpp",
    ["bool CChainState::ConnectBlock(const CBlock& block, CValidationState& state, CBlockIndex* pindex)", "{"], C_CLOSE,
    ["**/validation.cpp"], ["ConnectBlock"],
    pre=[
        "    AssertLockHeld(cs_main);",
        "    int64_t nTimeStart = GetTimeMicros();",
    ],
    vuln_only=[
        "    if (!CheckBlock(block, state, chainparams.GetConsensus(), !fJustCheck))",
        "        return error(\"%s: Consensus::CheckBlock: %s\", __func__, FormatStateMessage(state));",
    ],
    patch=[
        "    if (!CheckBlock(block, state, chainparams.GetConsensus(), !fJustCheck)) {",
        "        if (state.CorruptionPossible()) {",
        "            return AbortNode(state, \"Corrupt block found indicating potential hardware failure\");",
        "        }",
        "        return error(\"%s: Consensus::CheckBlock: %s\", __func__, FormatStateMessage(state));",
        "    }",
    ],
    post=[
        "    nBlocksTotal++;",
        "    return true;",
    ],
    anchor=["    AssertLockHeld(cs_main);", "    int64_t nTimeStart = GetTimeMicros();",
            "    if (!CheckBlock(a, b))"],
    vuln_sig=["    if (!CheckBlock(a, b))", "        return error(\"x\");",
              "    nBlocksTotal++;", "    return true;"],
)

pattern(
    "P12", "Prevent a malformed block from propagating", "Ethereum #20546",
    "go", "eth/fetcher.go",
    ["func (f *Fetcher) verifyBlocks(peer string, blocks []*types.Block) error {"], GO_CLOSE,
    ["**/fetcher.go"], ["verifyBlocks"],
    pre=[
        "\tfor _, block := range blocks {",
        "\t\thash := block.Hash()",
        "\t\tif f.getBlock(hash) != nil {",
        "\t\t\tcontinue",
        "\t\t}",
    ],
    patch=[
        "\t\tif types.CalcUncleHash(block.Uncles()) != block.UncleHash() {",
        "\t\t\tlog.Warn(\"Propagated block has invalid uncles\", \"received\", hash)",
        "\t\t\tbreak",
        "\t\t}",
        "\t\tif types.DeriveSha(block.Transactions()) != block.TxHash() {",
        "\t\t\tlog.Warn(\"Propagated block has invalid body\", \"received\", hash)",
        "\t\t\tbreak",
        "\t\t}",
    ],
    post=[
        "\t\tf.enqueue(peer, block)",
        "\t}",
        "\treturn nil",
    ],
    anchor=["\tfor _, b := range blocks {", "\t\thash := block.Hash()",
            "\t\tif f.getBlock(hash) != nil {"],
    vuln_sig=["\t\thash := block.Hash()", "\t\tif f.getBlock(hash) != nil {",
              "\t\tf.enqueue(peer, block)", "\treturn nil"],
)

pattern(
    "P13", "Disconnect after the timeout of header synchronization", "Bitcoin #10345",
    "c-family", "src/net_processing.cpp",
    ["bool SendMessages(CNode* pto)", "{"], C_CLOSE,
    ["**/net_processing.cpp"], ["SendMessages"],
    pre=[
        "    if (pto->fDisconnect)",
        "        return true;",
        "    CNodeState *state = State(pto->GetId());",
    ],
    patch=[
        "    if (state->fSyncStarted && state->nHeadersSyncTimeout > 0) {",
        "        if (pindexBestHeader->GetBlockTime() <= GetAdjustedTime() - 24 * 60 * 60) {",
        "            if (nNow > state->nHeadersSyncTimeout && nSyncStarted == 1) {",
        "                pto->fDisconnect = true;",
        "                return true;",
        "            }",
        "        }",
        "    }",
    ],
    post=[
        "    SendPings(pto);",
        "    return true;",
    ],
    anchor=["    if (pto->fDisconnect)", "        return true;",
            "    CNodeState *state = State(pto->GetId());"],
    vuln_sig=["        return true;", "    CNodeState *state = State(pto->GetId());",
              "    SendPings(pto);", "    return true;"],
)

pattern(
    "P14", "Disconnect outbound peers on the invalid chain", "Bitcoin #11568",
    "c-family", "src/net_disconnect.cpp",
    ["void ConsiderEviction(CNode& pto, int64_t time_in_seconds)", "{"], C_CLOSE,
    ["**/net_disconnect.cpp"], ["ConsiderEviction"],
    pre=[
        "    AssertLockHeld(cs_main);",
        "    CNodeState &state = *State(pto.GetId());",
    ],
    patch=[
        "    if (state.pindexBestKnownBlock->GetHash() != chainActive.Tip()->GetHash()) {",
        "        pto.fDisconnect = true;",
        "    }",
    ],
    post=[
        "    if (state.fSyncStarted)",
        "        nSyncStarted--;",
        "    return;",
    ],
    anchor=["    AssertLockHeld(cs_main);", "    CNodeState &state = *State(pto.GetId());"],
    vuln_sig=["    AssertLockHeld(cs_main);", "    CNodeState &state = *State(pto.GetId());",
              "    if (state.fSyncStarted)", "        nSyncStarted--;", "    return;"],
)

pattern(
    "P15", "Drop the remote peer on an invalid or unverified TD", "Ethereum #604",
    "go", "eth/peer_handler.go",
    ["func (p *peer) handleNewBlockMsg(msg Msg) error {"], GO_CLOSE,
    ["**/peer_handler.go"], ["handleNewBlockMsg"],
    pre=[
        "\tvar request newBlockData",
        "\tif err := msg.Decode(&request); err != nil {",
        "\t\treturn errResp(ErrDecode, \"%v: %v\", msg, err)",
        "\t}",
    ],
    patch=[
        "\ttrueTD := new(big.Int).Sub(request.TD, request.Block.Difficulty())",
        "\tif trueTD.Cmp(p.td) <= 0 {",
        "\t\treturn errResp(ErrInvalidMsg, \"peer TD not verified\")",
        "\t}",
    ],
    post=[
        "\tp.blockchain.Enqueue(request.Block)",
        "\treturn nil",
    ],
    anchor=["\tvar request newBlockData", "\tif err := msg.Decode(&request); err != nil {",
            "\t\treturn errResp(ErrDecode, \"x\")"],
    vuln_sig=["\tif err := msg.Decode(&request); err != nil {",
              "\t\treturn errResp(ErrDecode, \"x\")",
              "\tp.blockchain.Enqueue(request.Block)", "\treturn nil"],
)

pattern(
    "P16", "Immediately wipe the memory for critical secret keys", "Monero #4268",
    "c-family", "src/ringct/rctSigs.cpp",
    ["mgSig proveRctMG(const key& message, const ctkeyM& pubs, const ctkeyV& inSk, unsigned int index)", "{"], C_CLOSE,
    ["**/rctSigs.cpp"], ["proveRctMG"],
    pre=[
        "    sk[0] = copy(inSk.dest);",
        "    sk[1] = sc_add(inSk.mask, a.bytes);",
    ],
    patch=[
        "    mgSig result = MLSAG_Gen(message, M, sk, kLRki, mscout, index, rows);",
        "    memwipe(sk.data(), sk.size() * sizeof(key));",
        "    return result;",
    ],
    vuln_only=[
        "    return MLSAG_Gen(message, M, sk, kLRki, mscout, index, rows);",
    ],
    post=[],
    anchor=["    sk[0] = copy(inSk.dest);", "    sk[1] = sc_add(inSk.mask, a.bytes);"],
    vuln_sig=["    sk[0] = copy(inSk.dest);", "    sk[1] = sc_add(inSk.mask, a.bytes);",
              "    return MLSAG_Gen(m, M, sk);"],
)

pattern(
    "P17", "Keep the wallet address in testnet or memory", "Monero #3315",
    "c-family", "src/wallet/wallet2.cpp",
    ["crypto::secret_key wallet2::generate(const std::string& wallet_, const epee::wipeable_string& password)", "{"], C_CLOSE,
    ["**/wallet2.cpp"], ["generate"],
    pre=[
        "    clear();",
        "    prepare_file_names(wallet_);",
    ],
    patch=[
        "    if (m_nettype != MAINNET || create_address_file)",
        "    {",
        "        r = store_keys(m_keys_file, password, false);",
        "        THROW_WALLET_EXCEPTION_IF(!r, error::file_save_error, m_keys_file);",
        "    }",
    ],
    vuln_only=[
        "    r = store_keys(m_keys_file, password, false);",
        "    THROW_WALLET_EXCEPTION_IF(!r, error::file_save_error, m_keys_file);",
    ],
    post=[
        "    store();",
        "    return retval;",
    ],
    anchor=["    clear();", "    prepare_file_names(wallet_);"],
    vuln_sig=["    clear();", "    prepare_file_names(wallet_);",
              "    r = store_keys(f, p, false);",
              "    THROW_WALLET_EXCEPTION_IF(!r, e, f);", "    store();"],
)

pattern(
    "P18", "Do not skip asking for password when watch-only", "Monero #4791",
    "c-family", "src/simplewallet/simplewallet.cpp",
    ["boost::optional<tools::password_container> simple_wallet::get_and_verify_password() const", "{"], C_CLOSE,
    ["**/simplewallet.cpp"], ["get_and_verify_password"],
    pre=[
        "    const auto pwd_container = default_password_prompter(m_wallet_file.empty());",
        "    if (!pwd_container)",
        "        return boost::none;",
    ],
    patch=[
        "    if (m_wallet->ask_password() && !m_wallet->verify_password(pwd_container->password()))",
        "    {",
        "        fail_msg_writer() << tr(\"invalid password\");",
        "        return boost::none;",
        "    }",
    ],
    post=[
        "    return pwd_container;",
    ],
    anchor=["    const auto pwd_container = default_password_prompter(m_wallet_file.empty());",
            "    if (!pwd_container)", "        return boost::none;"],
    vuln_sig=["    if (!pwd_container)", "        return boost::none;",
              "    return pwd_container;"],
)

pattern(
    "P19", "Check the validity of the Quorum set", "Stellar #2233",
    "c-family", "src/main/Config.cpp",
    ["void Config::validateConfig(bool mixed)", "{"], C_CLOSE,
    ["**/Config.cpp"], ["validateConfig"],
    pre=[
        "    auto validators = getValidators();",
        "    if (validators.empty())",
        "    {",
        "        throw std::invalid_argument(\"no validators defined\");",
        "    }",
    ],
    patch=[
        "    if (!isQuorumSetSane(QUORUM_SET, !UNSAFE_QUORUM))",
        "    {",
        "        LOG(FATAL) << fmt::format(\"Invalid QUORUM_SET: check nesting, duplicate entries and thresholds\");",
        "        throw std::invalid_argument(\"Invalid QUORUM_SET\");",
        "    }",
    ],
    post=[
        "    normalizeQSet(QUORUM_SET);",
    ],
    anchor=["    auto validators = getValidators();", "    if (validators.empty())",
            "        throw std::invalid_argument(\"x\");"],
    vuln_sig=["    if (validators.empty())", "        throw std::invalid_argument(\"x\");",
              "    normalizeQSet(QUORUM_SET);"],
)

pattern(
    "P20", "Enforce a gas cap on RPC callers against DoS", "Ethereum #19401",
    "go", "internal/ethapi/api.go",
    ["func (s *PublicBlockChainAPI) EstimateGas(ctx context.Context, args CallArgs) (hexutil.Uint64, error) {"], GO_CLOSE,
    ["**/api.go"], ["EstimateGas"],
    pre=[
        "\tif args.Gas == nil {",
        "\t\targs.Gas = new(hexutil.Uint64)",
        "\t}",
    ],
    patch=[
        "\tif gasCap := s.b.RPCGasCap(); gasCap != nil {",
        "\t\tif *args.Gas.Cmp(gasCap) > 0 {",
        "\t\t\tlog.Warn(\"Applying cap on gas\", \"requested\", args.Gas)",
        "\t\t\tnewGas := hexutil.Uint64(gasCap.Uint64())",
        "\t\t\t*args.Gas = newGas",
        "\t\t}",
        "\t}",
    ],
    post=[
        "\treturn DoEstimateGas(ctx, s.b, args, rpc.PendingBlockNumber)",
    ],
    anchor=["\tif args.Gas == nil {", "\t\targs.Gas = new(hexutil.Uint64)"],
    vuln_sig=["\tif args.Gas == nil {", "\t\targs.Gas = new(hexutil.Uint64)",
              "\treturn DoEstimateGas(ctx, s.b, args, rpc.PendingBlockNumber)"],
)

pattern(
    "P21", "Avoid corruption due to unfinished blockchain tasks", "Monero #706",
    "c-family", "src/cryptonote_core/blockchain_storage.cpp",
    ["void Blockchain::check_against_checkpoints(const checkpoints& points, bool enforce)", "{"], C_CLOSE,
    ["**/blockchain_storage.cpp"], ["check_against_checkpoints"],
    pre=[
        "    const auto& pts = points.get_points();",
    ],
    patch=[
        "    CRITICAL_REGION_LOCAL(m_blockchain_lock);",
    ],
    post=[
        "    m_db->batch_start();",
        "    for (const auto& pt : pts)",
        "    {",
        "        if (!ExistsBlockHeight(pt.first))",
        "            continue;",
        "    }",
        "    m_db->batch_stop();",
    ],
    anchor=["    m_db->batch_start();", "    for (const auto& pt : pts)",
            "        if (!ExistsBlockHeight(pt.first))"],
    vuln_sig=["    const auto& pts = points.get_points();", "    m_db->batch_start();",
              "    for (const auto& pt : pts)"],
)


def emit_tree(root, patched):
    for p in P:
        path = os.path.join(root, p["path"])
        os.makedirs(os.path.dirname(path), exist_ok=True)
        lines = []
        if p["lang"] == "go":
            pkg = os.path.basename(os.path.dirname(p["path"])) or "main"
            lines.append(f"package {pkg}")
            lines.append("")
        else:
            lines.append(f"#include \"{os.path.basename(p['path']).rsplit('.', 1)[0]}.h\"")
            lines.append("")
        lines.extend(p["func_sig"])
        lines.extend(p["pre"])
        lines.extend(p["patch"] if patched else p["vuln_only"])
        lines.extend(p["post"])
        lines.extend(p["close"])
        with open(path, "w") as f:
            f.write("\n".join(lines) + "\n")


emit_tree("fixtures/scan/patched", True)
emit_tree("fixtures/scan/vulnerable", False)

manifest = [
    {
        "id": p["id"], "description": p["description"], "provenance": p["provenance"],
        "lang": p["lang"], "file_globs": p["globs"], "function_patterns": p["funcs"],
        "anchor_lines": p["anchor_lines"], "vulnerable_lines": p["vuln_lines"],
        "patched_lines": p["patch"],
    }
    for p in P
]
with open("tools/pattern_parts.json", "w") as f:
    json.dump(manifest, f, indent=1)
print(f"wrote {len(P)} patterns x 2 trees")
