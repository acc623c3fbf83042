#ifndef CONLAT_ERRORS_HPP_
#define CONLAT_ERRORS_HPP_

#include <atomic>
#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace conlat {

enum class ErrorKind {
  NotAPartialOrder,
  NotALattice,
  NotAHomomorphism,
  SizeCapExceeded,
  NotACongruence,
  NotAFilter,
  NotAnIdeal,
  NotAnIsomorphism,
  NotAnEmbedding,
  NotDistributive,
  SearchExhausted,
  IncoherentProblem,
  GluingSeamMismatch,
  MeetUndefined,
  ConstructionUncertified,
  PreconditionFailed,
  IncoherentPresentation,
  ParseError,
  InvalidArgument,
};

inline std::string_view to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::NotAPartialOrder: return "NotAPartialOrder";
    case ErrorKind::NotALattice: return "NotALattice";
    case ErrorKind::NotAHomomorphism: return "NotAHomomorphism";
    case ErrorKind::SizeCapExceeded: return "SizeCapExceeded";
    case ErrorKind::NotACongruence: return "NotACongruence";
    case ErrorKind::NotAFilter: return "NotAFilter";
    case ErrorKind::NotAnIdeal: return "NotAnIdeal";
    case ErrorKind::NotAnIsomorphism: return "NotAnIsomorphism";
    case ErrorKind::NotAnEmbedding: return "NotAnEmbedding";
    case ErrorKind::NotDistributive: return "NotDistributive";
    case ErrorKind::SearchExhausted: return "SearchExhausted";
    case ErrorKind::IncoherentProblem: return "IncoherentProblem";
    case ErrorKind::GluingSeamMismatch: return "GluingSeamMismatch";
    case ErrorKind::MeetUndefined: return "MeetUndefined";
    case ErrorKind::ConstructionUncertified: return "ConstructionUncertified";
    case ErrorKind::PreconditionFailed: return "PreconditionFailed";
    case ErrorKind::IncoherentPresentation: return "IncoherentPresentation";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// The single exception type thrown by the library. `witness()` carries the
/// element indices (or line/column for parse errors) that exhibit the failure.
class LatticeError : public std::runtime_error {
 public:
  LatticeError(ErrorKind kind, std::string const& message,
               std::vector<std::size_t> witness = {})
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind),
        witness_(std::move(witness)) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::vector<std::size_t> const& witness() const noexcept { return witness_; }

 private:
  ErrorKind kind_;
  std::vector<std::size_t> witness_;
};

[[noreturn]] inline void fail(ErrorKind kind, std::string const& message,
                              std::vector<std::size_t> witness = {}) {
  throw LatticeError(kind, message, std::move(witness));
}

namespace detail {
inline std::atomic<std::size_t>& element_cap_storage() {
  static std::atomic<std::size_t> cap{4096};
  return cap;
}
}  // namespace detail

/// Upper bound on the number of elements of any lattice the library builds.
inline std::size_t element_cap() { return detail::element_cap_storage().load(); }

inline void set_element_cap(std::size_t cap) {
  detail::element_cap_storage().store(cap);
}

/// Restores the previous cap on destruction.
class ScopedElementCap {
 public:
  explicit ScopedElementCap(std::size_t cap) : saved_(element_cap()) {
    set_element_cap(cap);
  }
  ~ScopedElementCap() { set_element_cap(saved_); }
  ScopedElementCap(ScopedElementCap const&) = delete;
  ScopedElementCap& operator=(ScopedElementCap const&) = delete;

 private:
  std::size_t saved_;
};

inline void check_cap(std::size_t n, std::string_view what) {
  if (n > element_cap()) {
    std::ostringstream os;
    os << what << " would have " << n << " elements (cap " << element_cap()
       << ")";
    fail(ErrorKind::SizeCapExceeded, os.str(), {n});
  }
}

}  // namespace conlat

#endif  // CONLAT_ERRORS_HPP_
