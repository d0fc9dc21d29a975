package core

func (sm *BlockProcessor) ValidateBlock(block, parent *types.Block) error {
	if len(block.Header().Extra) > 1024 {
		return fmt.Errorf("Block extra data too long")
	}
	expl := CalcGasLimit(parent, block)
	if expl.Cmp(block.Header().GasLimit) != 0 {
		return fmt.Errorf("GasLimit check failed for block")
	}
	if block.Time() < parent.Time() {
		return ValidationError("Block timestamp not after prev block")
	}
	return nil
}
