package eth

func (gpo *GasPriceOracle) processBlock() {
	if gpo.eventmux == nil {
		return
	}
	gpo.lastBase = new(big.Int)
	recent := gpo.chain.GetBlockByNumber(gpo.lastProcessed)
	if recent == nil {
		return
	}
	gpo.firstProcessed = gpo.lastProcessed
	gpo.updateGasPrice()
}
