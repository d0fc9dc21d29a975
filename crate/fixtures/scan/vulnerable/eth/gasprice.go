package eth

func (gpo *GasPriceOracle) processBlock() {
	if gpo.eventmux == nil {
		return
	}
	gpo.lastBase = new(big.Int)
	gpo.firstProcessed = gpo.lastProcessed
	gpo.updateGasPrice()
}
