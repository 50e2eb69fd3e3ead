import os

import simplejson as json


class Config:
    pass


CONFIG = Config()
CONFIG.PROJECT_PATH = os.path.dirname(os.path.realpath(__file__))
CONFIG.DEFAULT_CONFIG_FILE = os.path.join(CONFIG.PROJECT_PATH, "../default_config.json")
CONFIG.BUDGET_ENV_VARIABLE = "KSMAGIC_MAX_BRUTE_QUBITS"

with open(CONFIG.DEFAULT_CONFIG_FILE, "r") as f:
    _defaults = json.load(f)["CONFIG"]

CONFIG.MAX_BRUTE_QUBITS = _defaults["BUDGETS"]["max_brute_qubits"]
CONFIG.MAX_EXHAUSTIVE_PERM_QUBITS = _defaults["BUDGETS"]["max_exhaustive_perm_qubits"]
CONFIG.HEURISTIC_CANDIDATES = _defaults["BUDGETS"]["heuristic_candidates"]
CONFIG.MAX_SAMPLING_QUBITS = _defaults["BUDGETS"]["max_sampling_qubits"]
CONFIG.MAX_EXPECTATION_QUBITS = _defaults["BUDGETS"]["max_expectation_qubits"]
CONFIG.BRUTE_CHUNK = _defaults["BUDGETS"]["brute_chunk"]
CONFIG.MAX_BRANCH_AMPLITUDES = _defaults["BUDGETS"]["max_branch_amplitudes"]
CONFIG.MAX_TABLE_ROWS = _defaults["BUDGETS"]["max_table_rows"]

CONFIG.NORM_TOLERANCE = _defaults["TOLERANCES"]["norm"]
CONFIG.REAL_TOLERANCE = _defaults["TOLERANCES"]["real"]
CONFIG.BRANCH_TOLERANCE = _defaults["TOLERANCES"]["branch"]

CONFIG.DEFAULT_EPSILON = _defaults["NOISE"]["default_epsilon"]
CONFIG.EPSILON_SWEEP = tuple(_defaults["NOISE"]["epsilon_sweep"])


def brute_force_budget() -> int:
    """Largest q brute_max may enumerate. The environment override is read on every call."""
    override = os.environ.get(CONFIG.BUDGET_ENV_VARIABLE)
    if override is None or override.strip() == "":
        return CONFIG.MAX_BRUTE_QUBITS

    try:
        budget = int(override)
    except ValueError:
        raise ValueError(f"{CONFIG.BUDGET_ENV_VARIABLE} must be an integer, got '{override}'.")
    if budget < 1:
        raise ValueError(f"{CONFIG.BUDGET_ENV_VARIABLE} must be positive, got {budget}.")

    return budget
