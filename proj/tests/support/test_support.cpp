#include "test_support.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <sstream>
#include <unistd.h>

namespace aladaen::testing {

namespace fs = std::filesystem;

TempDir::TempDir(const std::string& tag) {
    static std::atomic<int> counter{0};
    path_ = fs::temp_directory_path() /
            (tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    fs::remove_all(path_);
    fs::create_directories(path_);
}

TempDir::~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
}

numerics::Tensor2D random_tensor(Gen& gen, std::size_t rows, std::size_t cols, double lo, double hi) {
    std::uniform_real_distribution<double> dist(lo, hi);
    numerics::Tensor2D t(rows, cols);
    for (auto& v : t.values()) v = dist(gen);
    return t;
}

std::vector<std::uint8_t> random_bits(Gen& gen, std::size_t n, double p) {
    std::bernoulli_distribution dist(p);
    std::vector<std::uint8_t> out(n);
    for (auto& b : out) b = dist(gen) ? 1 : 0;
    return out;
}

data::BooleanDataset random_dataset(Gen& gen, std::size_t rows, std::size_t cols, double p,
                                    const std::string& id_prefix) {
    std::vector<std::string> ids;
    for (std::size_t r = 0; r < rows; ++r) {
        std::string n = std::to_string(r);
        ids.push_back(id_prefix + std::string(4 - std::min<std::size_t>(4, n.size()), '0') + n);
    }
    std::vector<std::string> attrs;
    for (std::size_t c = 0; c < cols; ++c) attrs.push_back("a" + std::to_string(c));
    return data::BooleanDataset(ids, attrs, random_bits(gen, rows * cols, p));
}

numerics::Tensor2D naive_affine(const numerics::Tensor2D& x, const numerics::Tensor2D& w,
                                const numerics::Tensor2D& b) {
    numerics::Tensor2D out(x.rows(), w.rows());
    for (std::size_t r = 0; r < x.rows(); ++r) {
        for (std::size_t o = 0; o < w.rows(); ++o) {
            double acc = b(0, o);
            for (std::size_t i = 0; i < x.cols(); ++i) acc += w(o, i) * x(r, i);
            out(r, o) = acc;
        }
    }
    return out;
}

double brute_dcg(const std::vector<int>& rel) {
    double s = 0.0;
    for (std::size_t i = 0; i < rel.size(); ++i) s += rel[i] / std::log2(static_cast<double>(i) + 2.0);
    return s;
}

double brute_ndcg(const std::vector<int>& rel) {
    std::vector<int> ideal = rel;
    std::sort(ideal.begin(), ideal.end(), std::greater<>());
    const double idcg = brute_dcg(ideal);
    return idcg == 0.0 ? 1.0 : brute_dcg(rel) / idcg;
}

std::vector<double> brute_avf(const data::BooleanDataset& ds) {
    std::vector<double> out(ds.rows(), 0.0);
    for (std::size_t r = 0; r < ds.rows(); ++r) {
        double total = 0.0;
        for (std::size_t c = 0; c < ds.cols(); ++c) {
            std::size_t count = 0;
            for (std::size_t o = 0; o < ds.rows(); ++o) {
                if (ds.cell(o, c) == ds.cell(r, c)) ++count;
            }
            total += static_cast<double>(count) / static_cast<double>(ds.rows());
        }
        out[r] = total / static_cast<double>(ds.cols());
    }
    return out;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> read_lines(const fs::path& path) {
    std::ifstream in(path);
    std::vector<std::string> out;
    std::string line;
    while (std::getline(in, line)) out.push_back(line);
    return out;
}

}  // namespace aladaen::testing
