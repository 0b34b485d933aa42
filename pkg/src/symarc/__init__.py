"""symarc: exact computational group theory for coset digraphs and factorisations."""

__version__ = "0.1.0"
