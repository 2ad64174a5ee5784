#pragma once

#include <stdexcept>
#include <string>

namespace ttd {

enum class Errc {
  usage,
  degenerate_input,
  degenerate,
  not_a_square,
  invariant_violation,
  shared_support,
  same_class,
  degenerate_algebra,
  indeterminate,
  unsupported_divisor,
  bad_reduction,
  bound_violation,
  inconclusive_local_image,
  precision_loss,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

}  // namespace ttd
