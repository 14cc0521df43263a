from codecs import open
from os import path

from setuptools import find_packages, setup

here = path.abspath(path.dirname(__file__))

with open(path.join(here, "README.md"), encoding="utf-8") as f:
    long_description = f.read()

setup(
    name="colorcut",
    version="0.1.0",
    description="Variable Neighborhood Search solvers for the Minimum Coloring Cut Problem",
    long_description_content_type="text/markdown",
    long_description=long_description,
    license="MIT",
    classifiers=[
        "Development Status :: 4 - Beta",
        "License :: OSI Approved :: MIT License",
        "Programming Language :: Python :: 3",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    keywords="graph - edge coloring - minimum cut - metaheuristic - vns",
    packages=find_packages(exclude=["contrib", "docs", "tests", "examples"]),
    python_requires=">=3.10",
    install_requires=["numpy>=1.22", "networkx>=2.6"],
    extras_require={"test": ["pytest", "hypothesis"]},
    entry_points={"console_scripts": ["colorcut=colorcut.cli:main"]},
)
