import os
from setuptools import setup

kwargs = {
    'name': 'bridgemc',
    # same version as in:
    # - src/bridgemc/_version.py
    # - stdeb.cfg
    'version': '0.1.0',
    'packages': ['bridgemc', 'bridgemc.models'],
    'package_dir': {'': 'src'},
    'install_requires': [
        'PyYAML >= 5.1',
        'numpy >= 1.17',
        'scipy >= 1.9',
    ],
    'python_requires': '>=3.8',
    'extras_require': {
        'test': [
            'flake8 < 6',
            'flake8-comprehensions',
            'pytest',
        ],
    },
    'author': 'the bridgemc authors',
    'keywords': ['diffusion', 'MCMC', 'Bayesian inference', 'diffusion bridge'],
    'entry_points': {
        'console_scripts': [
            'bridgemc = bridgemc.main:bridgemc_main',
        ]
    },
    'classifiers': [
        'Programming Language :: Python',
        'Topic :: Scientific/Engineering :: Mathematics',
        'License :: OSI Approved :: BSD License'],
    'description': 'Bayesian estimation of discretely observed diffusions with guided bridge proposals',
    'long_description': 'Library and command-line tool running the innovation scheme '
                        'with guided diffusion bridge proposals on discretely observed '
                        'multivariate diffusions.',
    'license': 'BSD',
}
if 'SKIP_PYTHON_MODULES' in os.environ:
    kwargs['packages'] = []
    kwargs['package_dir'] = {}
elif 'SKIP_PYTHON_SCRIPTS' in os.environ:
    kwargs['name'] += '_modules'
    kwargs['entry_points'] = {}

setup(**kwargs)
