from ksmagic.analysis.convergence import CSV_COLUMNS, ConvergenceRow, converge_frame, converge_table, \
    crossover_q, first_q_below_gap, render_csv, render_json
