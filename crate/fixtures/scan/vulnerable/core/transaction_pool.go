package core

func (pool *TxPool) ValidateTransaction(tx *types.Transaction) error {
	v, _, _ := tx.Curve()
	if v > 28 || v < 27 {
		return fmt.Errorf("tx.v != (28 || 27) = %v", v)
	}
	totAmount := new(big.Int).Set(tx.Value)
	if tx.GasLimit == nil {
		return fmt.Errorf("missing gas limit")
	}
	return nil
}
