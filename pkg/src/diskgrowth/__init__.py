"""Laplace eigenfunctions of the unit disk and their sup-norm growth."""
