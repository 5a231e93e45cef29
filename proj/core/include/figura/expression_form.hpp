#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>

namespace figura {

// How a metaphor is delivered in conversation.
enum class ExpressionForm { literal, one_round, two_round };

inline constexpr std::array<ExpressionForm, 3> kAllExpressionForms{
    ExpressionForm::literal, ExpressionForm::one_round, ExpressionForm::two_round};

std::string_view to_string(ExpressionForm form);
std::optional<ExpressionForm> parse_expression_form(std::string_view text);
constexpr std::size_t index_of(ExpressionForm form) { return static_cast<std::size_t>(form); }

}  // namespace figura
