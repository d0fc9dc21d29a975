package eth

func (p *peer) handleNewBlockMsg(msg Msg) error {
	var request newBlockData
	if err := msg.Decode(&request); err != nil {
		return errResp(ErrDecode, "%v: %v", msg, err)
	}
	p.blockchain.Enqueue(request.Block)
	return nil
}
