#pragma once

namespace swqpd {

inline constexpr const char* version = "0.1.0";

}  // namespace swqpd
