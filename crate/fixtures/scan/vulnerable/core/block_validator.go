package core

func (sm *BlockProcessor) ValidateBlock(block, parent *types.Block) error {
	if len(block.Header().Extra) > 1024 {
		return fmt.Errorf("Block extra data too long")
	}
	if block.Time() < parent.Time() {
		return ValidationError("Block timestamp not after prev block")
	}
	return nil
}
