#include "cimig/corpus.hpp"

#include "cimig/text.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace cimig {

Dialect detect_dialect(const std::string& path) {
    std::string name = to_lower(fs::path(path).filename().string());
    std::string parent = to_lower(fs::path(path).parent_path().filename().string());
    if (name.find("travis") != std::string::npos) return Dialect::travis();
    if (name.find("gha") != std::string::npos || name.find("workflow") != std::string::npos ||
        name.find("action") != std::string::npos || parent == "workflows")
        return Dialect::gha();
    return Dialect::other("unknown");
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open file for writing: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

namespace {

bool yaml_file(const fs::path& p) {
    std::string ext = to_lower(p.extension().string());
    return ext == ".yml" || ext == ".yaml";
}

std::vector<std::string> sorted_yaml_files(const std::string& dir) {
    std::vector<std::string> out;
    if (dir.empty() || !fs::exists(dir)) return out;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && yaml_file(entry.path())) out.push_back(entry.path().string());
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

std::vector<std::pair<std::string, std::string>> load_pair_paths(const std::string& paired_dir,
                                                                 const Dialect& source,
                                                                 const Dialect& target) {
    std::vector<std::pair<std::string, std::string>> pairs;
    if (paired_dir.empty() || !fs::exists(paired_dir)) return pairs;
    std::vector<std::string> subdirs;
    for (const auto& entry : fs::directory_iterator(paired_dir))
        if (entry.is_directory()) subdirs.push_back(entry.path().string());
    std::sort(subdirs.begin(), subdirs.end());
    for (const auto& sub : subdirs) {
        std::vector<std::string> src_files, tgt_files;
        for (const auto& f : sorted_yaml_files(sub)) {
            Dialect d = detect_dialect(f);
            if (d == source) src_files.push_back(f);
            else if (d == target) tgt_files.push_back(f);
        }
        for (const auto& s : src_files)
            for (const auto& t : tgt_files) pairs.emplace_back(s, t);
    }
    return pairs;
}

CorpusFiles load_corpus(const std::string& paired_dir, const std::string& src_only_dir,
                        const std::string& tgt_only_dir, const Dialect& source,
                        const Dialect& target) {
    CorpusFiles corpus;
    corpus.pairs = load_pair_paths(paired_dir, source, target);
    if (!paired_dir.empty() && fs::exists(paired_dir)) {
        std::vector<std::string> subdirs;
        for (const auto& entry : fs::directory_iterator(paired_dir))
            if (entry.is_directory()) subdirs.push_back(entry.path().string());
        std::sort(subdirs.begin(), subdirs.end());
        for (const auto& sub : subdirs) {
            bool has_src = false, has_tgt = false;
            for (const auto& f : sorted_yaml_files(sub)) {
                Dialect d = detect_dialect(f);
                has_src |= d == source;
                has_tgt |= d == target;
            }
            if (!has_src || !has_tgt)
                corpus.warnings.push_back("pair directory missing a " +
                                          std::string(!has_src ? "source" : "target") +
                                          "-dialect file: " + sub);
        }
    }
    corpus.src_only = sorted_yaml_files(src_only_dir);
    corpus.tgt_only = sorted_yaml_files(tgt_only_dir);
    return corpus;
}

} // namespace cimig
