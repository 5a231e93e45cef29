#include "figura/expression_form.hpp"

namespace figura {

std::string_view to_string(ExpressionForm form) {
  switch (form) {
    case ExpressionForm::literal:
      return "literal";
    case ExpressionForm::one_round:
      return "one_round";
    case ExpressionForm::two_round:
      return "two_round";
  }
  return "literal";
}

std::optional<ExpressionForm> parse_expression_form(std::string_view text) {
  for (const auto form : kAllExpressionForms) {
    if (to_string(form) == text) return form;
  }
  return std::nullopt;
}

}  // namespace figura
