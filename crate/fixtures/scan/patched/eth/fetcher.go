package eth

func (f *Fetcher) verifyBlocks(peer string, blocks []*types.Block) error {
	for _, block := range blocks {
		hash := block.Hash()
		if f.getBlock(hash) != nil {
			continue
		}
		if types.CalcUncleHash(block.Uncles()) != block.UncleHash() {
			log.Warn("Propagated block has invalid uncles", "received", hash)
			break
		}
		if types.DeriveSha(block.Transactions()) != block.TxHash() {
			log.Warn("Propagated block has invalid body", "received", hash)
			break
		}
		f.enqueue(peer, block)
	}
	return nil
}
