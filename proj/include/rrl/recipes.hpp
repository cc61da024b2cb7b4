#pragma once

#include <map>
#include <string>
#include <vector>

namespace rrl {

// One experiment run: a named recipe, its parameters as text, and where the
// artifact goes.
struct RecipeConfig {
  std::string recipe;
  std::map<std::string, std::string> params;
  std::string out;              ///< empty: no file is written
  std::string format = "json";  ///< json | csv
};

const std::vector<std::string>& recipe_names();
/// Parameter keys accepted by a recipe. Throws UnknownRecipe.
const std::vector<std::string>& recipe_keys(const std::string& recipe);

/// Rejects unknown recipes, unknown keys and unknown formats.
void validate_config(const RecipeConfig& cfg);

/// key = value file with optional [run], [params] or [<recipe>] sections.
/// recipe, out and format may appear at top level or under [run].
RecipeConfig load_config(const std::string& path);

/// Fields set in `flags` replace those in `base`.
RecipeConfig merge_config(RecipeConfig base, const RecipeConfig& flags);

/// Validates, runs and returns the artifact text; also writes it to cfg.out
/// when set. Output depends only on cfg.
std::string run_recipe(const RecipeConfig& cfg);

}  // namespace rrl
