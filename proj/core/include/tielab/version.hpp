#ifndef TIELAB_VERSION_HPP
#define TIELAB_VERSION_HPP

namespace tielab {

inline constexpr const char* kArtifactName = "tielab";
inline constexpr const char* kArtifactVersion = "0.1.0";

}  // namespace tielab

#endif  // TIELAB_VERSION_HPP
