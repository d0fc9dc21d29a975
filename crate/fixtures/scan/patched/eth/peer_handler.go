package eth

func (p *peer) handleNewBlockMsg(msg Msg) error {
	var request newBlockData
	if err := msg.Decode(&request); err != nil {
		return errResp(ErrDecode, "%v: %v", msg, err)
	}
	trueTD := new(big.Int).Sub(request.TD, request.Block.Difficulty())
	if trueTD.Cmp(p.td) <= 0 {
		return errResp(ErrInvalidMsg, "peer TD not verified")
	}
	p.blockchain.Enqueue(request.Block)
	return nil
}
