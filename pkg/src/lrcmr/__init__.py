"""Cyclic MR codes over finite fields."""
