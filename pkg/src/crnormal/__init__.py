"""Formal normal forms of real hypersurface germs in C^2."""
