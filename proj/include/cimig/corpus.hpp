#pragma once

#include "cimig/yaml.hpp"

#include <string>
#include <utility>
#include <vector>

namespace cimig {

// Paired corpus on disk: one subdirectory per project, each holding one
// source-dialect file and one or more target-dialect files; tuples with
// several target files expand into pairs.
struct CorpusFiles {
    std::vector<std::pair<std::string, std::string>> pairs; // (source path, target path)
    std::vector<std::string> src_only;
    std::vector<std::string> tgt_only;
    std::vector<std::string> warnings;
};

// Filename convention: "travis" marks Travis CI, "gha"/"workflow"/"action"
// marks GitHub Actions. Paths that match neither come back as Other.
Dialect detect_dialect(const std::string& path);

CorpusFiles load_corpus(const std::string& paired_dir, const std::string& src_only_dir,
                        const std::string& tgt_only_dir, const Dialect& source,
                        const Dialect& target);

std::vector<std::pair<std::string, std::string>> load_pair_paths(const std::string& paired_dir,
                                                                 const Dialect& source,
                                                                 const Dialect& target);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

} // namespace cimig
