from setuptools import setup, find_packages


with open('README.md') as f:
    readme = f.read()

setup(
    name='django-animalab',
    version='0.4.0',
    description='Django application to sample, count and check directed \
lattice animals and their infinite limits',
    long_description=readme,
    long_description_content_type='text/markdown',
    packages=find_packages(exclude=['testing', 'testing.*']),
    license='MIT',
    classifiers=[
        'Development Status :: 3 - Alpha',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: MIT License',
        'Operating System :: OS Independent',
        'Programming Language :: Python :: 3',
        'Framework :: Django',
        'Topic :: Scientific/Engineering :: Mathematics',
    ],
    include_package_data=True,
    package_data={'animalab': ['fixtures/*.json']},
    zip_safe=False,
    python_requires='>=3.9',
    install_requires=[
        'Django>=3.2',
        'celery>=5.2',
        'networkx>=2.8',
        'numpy>=1.22',
        'scipy>=1.8',
        'svgwrite>=1.4',
    ],
    extras_require={
        'test': ['pytest>=7.0', 'pytest-django>=4.5'],
    },
    entry_points={
        'console_scripts': ['animalab=animalab.cli:main'],
    },
)
