#pragma once

#include <memory>
#include <string>

#include "taufold/catalog.hpp"
#include "taufold/subcat.hpp"
#include "taufold/taufold.hpp"

namespace taufold::testutil {

inline std::string data_path(const std::string& name) { return std::string(TAUFOLD_DATA_DIR) + "/" + name + ".alg"; }

inline AlgebraPtr algebra(const std::string& name) { return load_algebra(data_path(name)); }

inline std::shared_ptr<const Context> context(const std::string& name, int mu = 2) {
  return std::make_shared<const Context>(build_catalog(algebra(name)), mu);
}

/// Catalog module by label.
inline const Representation& mod(const Context& ctx, const std::string& label) {
  return ctx.cat().module(*ctx.cat().find_label(label));
}

inline int idx(const Context& ctx, const std::string& label) { return *ctx.cat().find_label(label); }

}  // namespace taufold::testutil
