#include <pybind11/pybind11.h>
PYBIND11_MODULE(_mope, m) { m.doc() = "placeholder"; }
