#ifndef GNLIE_VERSION_HPP
#define GNLIE_VERSION_HPP

namespace gnlie {

inline constexpr const char* kToolName = "gnlie";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace gnlie

#endif
