"""
Setup file for the LPDelta project.

This script specifies the Python packages, additional files, and entry points needed for the project.
It also creates the bash command used to run the program and maps it to the corresponding Python function.

Structure:
- `name`: Specifies the package name.
- `version`: Specifies the package version.
- `description`: Brief description of the package.
- `packages`: Lists the Python packages included in the project.
- `package_data`: Specifies the packaged default configuration.
- `entry_points`: Defines the bash command and maps it to a Python function.
- `install_requires`: Lists the package dependencies, read from requirements.txt.

"""

from setuptools import setup, find_packages

# Import the version number
__version__="0.1.0"

# Read requirements.txt and store its content in a list
with open("requirements.txt", "r") as f:
    requirements = f.read().splitlines()

setup(
      name = "LPDelta",
      version = __version__,
      description = "Real-rootedness preservation of central finite-difference operators.",
      # Specifying python packages.
      packages = find_packages(exclude=["tests", "tests.*"]),
      # Specifying non-pyscript files.
      package_data={'lpdelta': ['config.yaml']},
      # The bash command and the function it maps to.
      entry_points = {'console_scripts':
                      ['lpdelta = lpdelta.lpdelta_cli:main', # every command: apply, certify, classify, search, ...
                       ]
                      },
      install_requires=requirements  # Read from requirements.txt
      )
