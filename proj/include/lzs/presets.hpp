#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace lzs {

/// fig2a, fig3a..f, fig4a..d, fig5a..f, fig6a..h, fig7a..d, fig8a..b, fig9b, fig10b.
const std::vector<std::string>& preset_names();

/// Config document for a preset; ValidationError for an unknown name.
nlohmann::json preset_document(const std::string& name);

}  // namespace lzs
