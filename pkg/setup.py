"""
This software is released under the GNU Affero General Public License (AGPL) v3.0 License.
"""

from setuptools import setup, find_packages

from synthesis import __version__

__license__ = "AGPL"

long_description = ''

setup(
    name='synthesis',
    version=__version__,
    packages=find_packages(exclude=[]),
    package_data={'synthesis.tests': ['data/*']},
    url='',
    license=__license__,
    description='Formal systems of forms, chains, projective foundations, constituents and modal closure checks',
    long_description=long_description,
    keywords='formal topology, constituents, kripke frames, exact reals',
    install_requires=['click', 'pyyaml', 'numpy', 'pandas', 'scipy'],
    entry_points={
        'console_scripts': [
            'synthesis = synthesis.__main__:cli'
        ]
    },
    extras_require={
        'develop': ['ipython', 'ipdb'],
        'doc': ['sphinx'],
    },
)
