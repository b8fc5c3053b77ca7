#ifndef CROSSDIFF_PRESETS_HPP
#define CROSSDIFF_PRESETS_HPP

#include <optional>
#include <string>
#include <vector>

namespace crossdiff {

std::vector<std::string> preset_names();
/// Config text of a built-in experiment, or nullopt for an unknown name.
std::optional<std::string> preset_text(const std::string& name);

}  // namespace crossdiff

#endif  // CROSSDIFF_PRESETS_HPP
