package ethapi

func (s *PublicBlockChainAPI) EstimateGas(ctx context.Context, args CallArgs) (hexutil.Uint64, error) {
	if args.Gas == nil {
		args.Gas = new(hexutil.Uint64)
	}
	return DoEstimateGas(ctx, s.b, args, rpc.PendingBlockNumber)
}
