#pragma once
#include <stdexcept>

namespace gmacsec {

// Internal consistency failure (e.g. mutual information negative beyond
// tolerance). The CLI maps this to exit code 2, everything else to 1.
struct internal_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}
