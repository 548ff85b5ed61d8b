"""
Polarized Modulo
Polarized deduction modulo for propositional theories: rewrite systems,
proof terms, theory compilation and sequent proof search
"""

__version__ = '1.0.0'
