from ksmagic.core.pauli import PauliString, identity, embed, uniform, mul, product, adjoint, commutes, \
    scalar_value, parse, format_pauli
