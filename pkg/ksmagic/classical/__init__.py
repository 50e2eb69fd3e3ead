from ksmagic.classical.oracle import Assignment, BoundResult, eval_xks2, eval_xksq, evaluate_form, brute_max, \
    verify_parity_identity, quantum_value_of, cell_mask, context_value
