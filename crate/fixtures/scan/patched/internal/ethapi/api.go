package ethapi

func (s *PublicBlockChainAPI) EstimateGas(ctx context.Context, args CallArgs) (hexutil.Uint64, error) {
	if args.Gas == nil {
		args.Gas = new(hexutil.Uint64)
	}
	if gasCap := s.b.RPCGasCap(); gasCap != nil {
		if *args.Gas.Cmp(gasCap) > 0 {
			log.Warn("Applying cap on gas", "requested", args.Gas)
			newGas := hexutil.Uint64(gasCap.Uint64())
			*args.Gas = newGas
		}
	}
	return DoEstimateGas(ctx, s.b, args, rpc.PendingBlockNumber)
}
