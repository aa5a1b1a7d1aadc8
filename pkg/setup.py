import setuptools

with open("README.md", "r") as fh:
    long_description = fh.read()

with open('requirements.txt') as f:
    requirements = f.read().splitlines()

with open('cli-requirements.txt') as f:
    cli_requirements = f.read().splitlines()

setuptools.setup(
    name="urtest",
    use_scm_version=True,
    setup_requires=['setuptools_scm'],
    author="urtest developers",
    description="urtest is a Python library and command line tool for dependent and "
    "recolored wild bootstrap unit root tests under time-varying errors.",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=setuptools.find_packages(exclude=["tests"]),
    install_requires=requirements,
    extras_require={'cli': cli_requirements},
    include_package_data=True,
    package_data={'urtest': ['urtest.cfg']},
    entry_points={
        "console_scripts": ["urtest = urtest.cli:main"]
    },
    classifiers=[
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: Implementation :: CPython",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent"
    ],
)
