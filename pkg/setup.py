from pathlib import Path

from setuptools import setup

requirements = [
    line.strip()
    for line in Path(__file__).with_name("requirements.txt").read_text().splitlines()
    if line.strip() and line.strip() != "pytest"
]

setup(
    name="qps",
    version="0.1.0",
    description="Exact projections over Toeplitz cubes, quantum spheres and quantum projective spaces",
    packages=["src"],
    python_requires=">=3.8",
    install_requires=requirements,
    extras_require={"test": ["pytest"]},
    entry_points={"console_scripts": ["qps=src.cli:main"]},
)
