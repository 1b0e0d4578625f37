from setuptools import setup, find_packages

setup(name='fnilpotent',
      version='0.0.1',
      description='Frobenius closure, tight closure and F-nilpotence over F_p[x_1..x_n]/A',
      license='Apache',
      packages=find_packages(),
      install_requires=['attrs', 'sympy>=1.13', 'click'],
      extras_require={'test': ['pytest', 'hypothesis']},
      entry_points={'console_scripts': ['fnil = fnilpotent.cli:main']})
