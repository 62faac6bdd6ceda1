#pragma once

#include <exception>
#include <iostream>

#include "qca/errors.hpp"

namespace qca::cli {

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitSpecError = 2;
inline constexpr int kExitNumericError = 3;

/// Reports the exception on `err` and returns the matching process exit code.
inline int report_exception(std::exception_ptr e, std::ostream& err) {
  try {
    std::rethrow_exception(e);
  } catch (const NumericError& x) {
    err << "numeric error: " << x.what() << '\n';
    return kExitNumericError;
  } catch (const InvalidArgument& x) {
    err << "spec error: " << x.what() << '\n';
    return kExitSpecError;
  } catch (const CapacityError& x) {
    err << "spec error: " << x.what() << '\n';
    return kExitSpecError;
  } catch (const std::exception& x) {
    err << "error: " << x.what() << '\n';
    return kExitFailure;
  } catch (...) {
    err << "error: unknown exception\n";
    return kExitFailure;
  }
}

}  // namespace qca::cli
