package eth

func (f *Fetcher) verifyBlocks(peer string, blocks []*types.Block) error {
	for _, block := range blocks {
		hash := block.Hash()
		if f.getBlock(hash) != nil {
			continue
		}
		f.enqueue(peer, block)
	}
	return nil
}
