#pragma once

#include <string_view>

namespace botscan {

// Built-in quotation reference: an original space-adventure text written for
// this project, standing in for any copyrighted source a real deployment
// would index instead.
std::string_view builtin_reference_text();

}  // namespace botscan
