#!/usr/bin/env python
from setuptools import setup

setup(
    name = 'sparse-factor-tools',
    version = '0.1.0',
    author = 'sparse-factor-tools contributors',

    description = 'Matrix completion under sparse factor models: ADMM solvers, '
                  'likelihood proxes, synthetic sweeps and error-bound calculators',
    long_description = open('README.rst').read() + "\n\n" + open('CHANGES.rst').read(),
    license = 'MIT License',
    install_requires = ['numpy', 'scipy >= 1.8', 'matplotlib', 'docopt >= 0.5'],
    keywords = "matrix completion sparse factor admm dictionary learning poisson one-bit",

    package_dir = {'': 'src'},
    packages = ['sparse_factor_tools', 'sparse_factor_tools.solver'],
    scripts=['bin/sparse-factor-tools.py'],

    classifiers=[
        'Development Status :: 3 - Alpha',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: MIT License',
        'Programming Language :: Python',
        'Programming Language :: Python :: 3',
        'Topic :: Scientific/Engineering :: Mathematics',
        'Topic :: Software Development :: Libraries :: Python Modules',
    ],
)
