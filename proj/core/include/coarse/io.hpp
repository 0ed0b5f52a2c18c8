#pragma once

#include <filesystem>
#include <string>

#include "coarse/coarse_map.hpp"
#include "coarse/module.hpp"

/// JSON file formats. Paths inside a file are resolved relative to that
/// file's directory. Writers emit objects with sorted keys and "inf" for
/// infinite distances, so output is byte-stable.
namespace coarse::io {

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& text);

/// {"points": [labels], "edges": [[i, j, w], ...]} or {"points", "dist"}.
ExtMetricSpace parse_space(const std::string& text);
std::string space_json(const ExtMetricSpace& space);
SpacePtr load_space(const std::filesystem::path& path);

/// {"source": space file, "target": space file, "pairs": [[y, x], ...]}
Relation load_relation(const std::filesystem::path& path);
std::string relation_json(const Relation& rel, const std::string& source_ref,
                          const std::string& target_ref);

/// {"space": space file, "multiplicity": [m_x, ...]}
ModulePtr load_module(const std::filesystem::path& path);
std::string module_json(const GeometricModule& module, const std::string& space_ref);

/// {"rows": n, "cols": m, "re": [...], "im": [...]}, row-major.
CMatrix parse_matrix(const std::string& text);
std::string matrix_json(const CMatrix& m);

/// Matrix fields plus {"source": module file, "target": module file}.
ModuleOperator load_operator(const std::filesystem::path& path);
std::string operator_json(const ModuleOperator& op, const std::string& source_ref,
                          const std::string& target_ref);

/// {"source": space file, "target": space file, "map": [target per source]}
CoarseMapRep load_map(const std::filesystem::path& path);
std::string map_json(std::span<const int> map, const std::string& source_ref,
                     const std::string& target_ref);

/// `target` expressed relative to the directory of `from_file`.
std::string relative_ref(const std::filesystem::path& target,
                         const std::filesystem::path& from_file);

}  // namespace coarse::io
