#pragma once

#include "opbar/barpoint.hpp"

#include <string>

namespace opbar {

/// DOT rendering of a raw point, drawn without normalizing so standard
/// forms keep their zero-weight edges visible: stable vertices boxed,
/// unary vertices circled, leaves plain, edges annotated with weights.
std::string render_dot(const Operad& q, const RawBarPoint& raw);

/// The basepoint renders as a single distinguished node.
std::string render_dot_basepoint();

}  // namespace opbar
