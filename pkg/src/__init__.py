"""qps: exact computations over Toeplitz cubes, quantum spheres and quantum projective spaces."""
