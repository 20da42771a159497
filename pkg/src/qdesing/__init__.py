"""Marked-ideal desingularization calculus over QQ and finitely generated fields."""
