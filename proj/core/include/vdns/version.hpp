#pragma once

namespace vdns {

inline constexpr const char* version() { return "0.1.0"; }

}  // namespace vdns
