#include <doctest.h>

#include <vector>

#include "mathreuse/kernels/kernels.hpp"
#include "mathreuse/util/rng.hpp"
#include "support/oracles.hpp"

using namespace mathreuse;
using kernels::KernelSet;

namespace {

std::vector<const KernelSet*> variants() {
    std::vector<const KernelSet*> out{&kernels::scalar_kernels()};
    if (const auto* k = kernels::avx2_kernels()) out.push_back(k);
    return out;
}

std::vector<std::uint32_t> random_seq(util::Rng& rng, std::size_t n, std::uint32_t alphabet) {
    std::vector<std::uint32_t> s(n);
    for (auto& x : s) x = static_cast<std::uint32_t>(rng.below(alphabet));
    return s;
}

// Quadratic table, for reference only.
std::size_t lcs_table(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
    std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j)
            cur[j + 1] = a[i] == b[j] ? prev[j] + 1 : std::max(prev[j + 1], cur[j]);
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("active kernel set is one of the variants") {
    const auto& k = kernels::active_kernels();
    CHECK((k.name == "scalar" || k.name == "avx2"));
    if (kernels::avx2_kernels() == nullptr) CHECK(k.name == "scalar");
}

TEST_CASE("lcs_advance: carries across words match between variants") {
    util::Rng rng(11);
    for (int trial = 0; trial < 2000; ++trial) {
        const std::size_t words = 1 + rng.below(13);
        std::vector<std::uint64_t> v(words), m(words);
        for (std::size_t w = 0; w < words; ++w) {
            // Runs of ones provoke long carry chains.
            v[w] = rng.chance(0.3) ? ~std::uint64_t{0} : rng.next();
            m[w] = rng.chance(0.2) ? 0 : rng.next();
        }
        std::vector<std::uint64_t> ref = v;
        kernels::scalar_kernels().lcs_advance(ref.data(), m.data(), words);
        for (const auto* k : variants()) {
            std::vector<std::uint64_t> got = v;
            k->lcs_advance(got.data(), m.data(), words);
            CHECK_MESSAGE(got == ref, k->name);
        }
    }
}

TEST_CASE("lcs_length agrees with the quadratic table") {
    util::Rng rng(5);
    for (int trial = 0; trial < 300; ++trial) {
        const auto a = random_seq(rng, rng.below(400), 2 + static_cast<std::uint32_t>(rng.below(6)));
        const auto b = random_seq(rng, rng.below(400), 2 + static_cast<std::uint32_t>(rng.below(6)));
        const std::size_t want = lcs_table(a, b);
        for (const auto* k : variants()) CHECK_MESSAGE(kernels::lcs_length(a, b, *k) == want, k->name);
    }
    CHECK(kernels::lcs_length(std::vector<std::uint32_t>{}, std::vector<std::uint32_t>{1, 2}) == 0);
}

TEST_CASE("lcs step over every short pair") {
    for (const auto* k : variants()) {
        const auto rep = testing::exhaustive_lcs_lengths(3, 6, *k);
        CHECK(rep.pairs == 1093ull * 1093ull);
        CHECK_MESSAGE(rep.mismatches == 0, rep.first_mismatch);
    }
}

TEST_CASE("git_row variants agree cell for cell") {
    util::Rng rng(23);
    for (int trial = 0; trial < 2000; ++trial) {
        const std::size_t m = rng.below(70);
        const auto b = random_seq(rng, m, 4);
        std::vector<std::uint8_t> marked(m + 8, 0);
        for (std::size_t j = 0; j < m; ++j) marked[j] = rng.chance(0.2);
        std::vector<std::int32_t> prev(m + 1);
        for (auto& x : prev) x = static_cast<std::int32_t>(rng.below(5));
        const auto sym = static_cast<std::uint32_t>(rng.below(4));
        const bool sym_marked = rng.chance(0.1);
        std::vector<std::int32_t> ref(m + 1, -1);
        const auto rr = kernels::scalar_kernels().git_row(sym, sym_marked, b.data(), marked.data(), prev.data(),
                                                          ref.data(), m);
        for (const auto* k : variants()) {
            std::vector<std::int32_t> cur(m + 1, -1);
            const auto r = k->git_row(sym, sym_marked, b.data(), marked.data(), prev.data(), cur.data(), m);
            CHECK(cur == ref);
            CHECK(r.value == rr.value);
            CHECK(r.index == rr.index);
        }
    }
}

}  // TEST_SUITE
