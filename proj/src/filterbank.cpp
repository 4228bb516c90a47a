#include "nslab/filterbank.hpp"

// header-only; translation unit kept so the module has a home in the build
namespace nslab {}
