#pragma once

#include <stdexcept>
#include <string>

namespace slz {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad input data (symbol out of alphabet, ragged strings).
class InputError : public Error { public: using Error::Error; };
// Argument outside the documented domain.
class ParamError : public Error { public: using Error::Error; };
// Query that has no defined answer (empty range, select past the end).
class QueryError : public Error { public: using Error::Error; };
// Caller broke a precondition that the structure relies on.
class ContractError : public Error { public: using Error::Error; };
// Internal consistency check failed while building a structure.
class ConstructionError : public Error { public: using Error::Error; };
class NotFoundError : public Error { public: using Error::Error; };
class FormatError : public Error { public: using Error::Error; };
class ConfigError : public Error { public: using Error::Error; };
class IoError : public Error { public: using Error::Error; };

}  // namespace slz
