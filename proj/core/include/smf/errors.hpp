#ifndef SMF_ERRORS_HPP
#define SMF_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <utility>

namespace smf {

/// Base class for all typed kernel errors. `name()` is the stable
/// machine-readable identifier surfaced on the CLI wire format.
class kernel_error : public std::runtime_error {
public:
  kernel_error(std::string name, const std::string& detail)
      : std::runtime_error(name + ": " + detail), name_(std::move(name)) {}

  const std::string& name() const noexcept { return name_; }

private:
  std::string name_;
};

#define SMF_DEFINE_ERROR(class_name, wire_name)                               \
  class class_name : public kernel_error {                                    \
  public:                                                                     \
    explicit class_name(const std::string& detail)                            \
        : kernel_error(wire_name, detail) {}                                  \
  }

SMF_DEFINE_ERROR(invalid_operand_error, "InvalidOperand");
SMF_DEFINE_ERROR(not_invertible_error, "NotInvertible");
SMF_DEFINE_ERROR(invalid_shape_error, "InvalidShape");
SMF_DEFINE_ERROR(not_even_error, "NotEven");
SMF_DEFINE_ERROR(not_nilpotent_error, "NotNilpotent");
SMF_DEFINE_ERROR(non_invertible_block_error, "NonInvertibleBlock");
SMF_DEFINE_ERROR(division_by_non_unit_error, "DivisionByNonUnit");
SMF_DEFINE_ERROR(empty_window_error, "EmptyWindow");
SMF_DEFINE_ERROR(insufficient_precision_error, "InsufficientPrecision");
SMF_DEFINE_ERROR(wrong_weight_error, "WrongWeight");
SMF_DEFINE_ERROR(not_superconformal_error, "NotSuperconformal");
SMF_DEFINE_ERROR(non_invertible_jacobian_error, "NonInvertibleJacobian");
SMF_DEFINE_ERROR(no_invertible_minor_error, "NoInvertibleMinor");
SMF_DEFINE_ERROR(degenerate_configuration_error, "DegenerateConfiguration");
SMF_DEFINE_ERROR(no_punctures_error, "NoPunctures");
SMF_DEFINE_ERROR(precondition_violated_error, "PreconditionViolated");
SMF_DEFINE_ERROR(odd_ramond_count_error, "OddRamondCount");
SMF_DEFINE_ERROR(parse_error, "ParseError");

#undef SMF_DEFINE_ERROR

}  // namespace smf

#endif
