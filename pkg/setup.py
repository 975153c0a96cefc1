from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # pure-Python fallback only
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("adequate._bruteforce", ["src/adequate/_bruteforce.pyx"])],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
