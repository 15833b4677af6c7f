from setuptools import setup, find_packages
import pathlib

here = pathlib.Path(__file__).parent.resolve()

# Get the long description from the README file
long_description = (here / "README.md").read_text(encoding="utf-8")

VERSION = '0.1.0'
DESCRIPTION = "Exact computer algebra for Nash blowups: differential powers, principal parts, Frobenius tests and quotient singularities."

# Setting up
setup(
        # the name must match the folder name
        name="nashforge",
        version=VERSION,
        description=DESCRIPTION,
        long_description=long_description,
        long_description_content_type="text/markdown",
        packages=find_packages(include=['nashforge', 'nashforge.*']),
        package_data={'nashforge': ['schema/*.json', 'inputs/*.ini']},
        python_requires=">=3.8, <4",
        license='MIT',
        install_requires=[
            'numpy', 'sympy(>=1.9)'
        ],
        extras_require={
            'test': ['pytest', 'jsonschema']
        },
        entry_points={
            'console_scripts': ['nashforge=nashforge.cli:main']
        },
        keywords=['computer algebra', 'Groebner basis', 'Nash blowup', 'differential operators', 'F-purity'],
        classifiers= [
            "Development Status :: 3 - Alpha",
            "Intended Audience :: Education",
            "Intended Audience :: Science/Research",
            "License :: OSI Approved :: MIT License",
            "Programming Language :: Python :: 3",
            "Operating System :: OS Independent",
            "Topic :: Education",
            "Topic :: Scientific/Engineering",
            "Topic :: Scientific/Engineering :: Mathematics"
        ]
)
