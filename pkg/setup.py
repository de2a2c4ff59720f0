#! /usr/bin/env python

from setuptools import setup

import os


def main():
    def read(fname):
        return open(os.path.join(os.path.dirname(__file__), fname)).read()

    project_version = read('VERSION').strip()
    install_requires = [line.strip() for line in read('requirements.txt').splitlines()
                        if line.strip() and not line.startswith('#') and not line.startswith('setuptools')]

    setup(name='subfbm',
          description='Currency option pricing under subdiffusive fractional Brownian motion with transaction costs',
          long_description=read('README.rst'),
          long_description_content_type='text/x-rst; charset=UTF-8',
          version=project_version,
          license='MPL-2.0',
          py_modules=['SubFBM'],
          packages=['util'],
          entry_points={'console_scripts': ['subfbm=SubFBM:run']},
          install_requires=install_requires,
          extras_require={'tests': ['pytest', 'mpmath']},
          python_requires='>=3.7',
          classifiers=[
              'Development Status :: 3 - Alpha',
              'Environment :: Console',
              'Intended Audience :: Financial and Insurance Industry',
              'Intended Audience :: Science/Research',
              'License :: OSI Approved :: Mozilla Public License 2.0 (MPL 2.0)',
              'Programming Language :: Python :: 3',
              'Topic :: Office/Business :: Financial :: Investment',
              'Topic :: Scientific/Engineering :: Mathematics',
          ])

if __name__ == '__main__':
    main()
