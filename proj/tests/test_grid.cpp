#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gwf/errors.hpp"
#include "gwf/grid.hpp"
#include "gwf/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>

using namespace gwf;

TEST_CASE("grid geometry") {
    const UniformGrid g(1, 1024, 20.0);
    CHECK(g.dx() == doctest::Approx(40.0 / 1024));
    CHECK(g.node(512) == doctest::Approx(0.0));
    CHECK(g.dxi() == doctest::Approx(M_PI / 20.0));
    CHECK(g.freq_half_extent() == doctest::Approx(M_PI * 1024 / 40.0));
    CHECK(g.dual().dual().compatible(g));
    CHECK_THROWS_AS(UniformGrid(3, 64, 1.0), config_error);
    CHECK_THROWS_AS(UniformGrid(1, 100, 1.0), config_error);
    CHECK_THROWS_AS(UniformGrid(1, 64, -1.0), config_error);

    const UniformGrid sq = square_phase_grid(1024);
    CHECK(sq.half_extent == doctest::Approx(sq.freq_half_extent()));
}

TEST_CASE("sampling the catalog") {
    const UniformGrid g(1, 256, 12.0);
    CHECK(sample(DistributionSpec::gaussian({0.0}, 1.0), g).values[128].real() ==
          doctest::Approx(1.0));
    CHECK(sample(DistributionSpec::chirp(1.0), g).values[128] == cplx(1.0, 0.0));
    for (const cplx& v : sample(DistributionSpec::constant(), g).values)
        CHECK(v == cplx(1.0, 0.0));
    CHECK_THROWS_AS(sample(DistributionSpec::delta(), g), numeric_error);
}

TEST_CASE("chirp aliasing guard") {
    const UniformGrid small(1, 64, 10.0);  // Xi = 10.05, c*L = 20 > Xi
    CHECK_THROWS_AS(sample(DistributionSpec::chirp(2.0), small), numeric_error);
    const UniformGrid ok(1, 1024, 10.0);
    CHECK_NOTHROW(sample(DistributionSpec::chirp(2.0), ok));
}

TEST_CASE("fourier transform against the Gaussian closed form") {
    const UniformGrid g(1, 1024, 20.0);
    const SampledSignal f = sample(DistributionSpec::gaussian({0.0}, 1.0), g);
    const SampledSignal fh = fourier(f);
    const UniformGrid d = g.dual();
    // f_hat(0) = sqrt(2 pi)
    CHECK(std::abs(fh.values[512] - cplx(std::sqrt(2.0 * M_PI), 0.0)) < 1e-10);
    // f_hat(1) = sqrt(2 pi) e^{-1/2} at the node closest to xi = 1
    const std::size_t k1 = std::size_t(std::lround((1.0 + d.half_extent) / d.dx()));
    const double xi1 = d.node(k1);
    CHECK(std::abs(fh.values[k1] -
                   cplx(std::sqrt(2.0 * M_PI) * std::exp(-0.5 * xi1 * xi1), 0.0)) < 1e-10);
}

TEST_CASE("round trip and Parseval") {
    const UniformGrid g(1, 512, 16.0);
    SampledSignal f = sample(DistributionSpec::gaussian({0.7}, 1.3), g);
    for (std::size_t j = 0; j < g.n; ++j)
        f.values[j] *= std::polar(1.0, 0.3 * g.node(j));  // make it complex

    const SampledSignal fh = fourier(f);
    const SampledSignal fr = inverse_fourier(fh);
    double num = 0.0, den = 0.0;
    for (std::size_t j = 0; j < g.n; ++j) {
        num += std::norm(fr.values[j] - f.values[j]);
        den += std::norm(f.values[j]);
    }
    CHECK(std::sqrt(num / den) < 1e-12);

    double nf = 0.0, nh = 0.0;
    for (const cplx& v : f.values) nf += std::norm(v);
    for (const cplx& v : fh.values) nh += std::norm(v);
    CHECK(nh * fh.grid.dx() / (2.0 * M_PI) ==
          doctest::Approx(nf * g.dx()).epsilon(1e-10));
}

TEST_CASE("2-d fourier round trip") {
    const UniformGrid g(2, 64, 8.0);
    SampledSignal f = sample(DistributionSpec::gaussian({0.3, -0.2}, 1.0), g);
    const SampledSignal fh = fourier(f);
    // value at the zero frequency node equals the 2-d integral: 2 pi w^2
    const std::size_t mid = 32 * 64 + 32;
    CHECK(std::abs(fh.values[mid] - cplx(2.0 * M_PI, 0.0)) < 1e-9);
    const SampledSignal fr = inverse_fourier(fh);
    double worst = 0.0;
    for (std::size_t i = 0; i < f.values.size(); ++i)
        worst = std::max(worst, std::abs(fr.values[i] - f.values[i]));
    CHECK(worst < 1e-12);
}

TEST_CASE("signal binary and csv round trip") {
    const UniformGrid g(1, 128, 4.0);
    SampledSignal f = sample(DistributionSpec::gaussian({0.5}, 0.8), g);
    f.values[3] = cplx(-0.25, 1.75);
    const std::string path = (std::filesystem::temp_directory_path() / "gwf_sig.bin").string();
    write_signal_bin(path, f);
    const SampledSignal r = read_signal_bin(path);
    CHECK(r.grid.n == f.grid.n);
    CHECK(r.grid.half_extent == f.grid.half_extent);
    for (std::size_t j = 0; j < g.n; ++j) CHECK(r.values[j] == f.values[j]);
    std::remove(path.c_str());

    const std::string csv = (std::filesystem::temp_directory_path() / "gwf_sig.csv").string();
    write_signal_csv(csv, f);
    std::ifstream is(csv);
    std::string header;
    std::getline(is, header);
    CHECK(header == "x,re,im");
    std::remove(csv.c_str());
}

TEST_CASE("fmt_g17 is deterministic and round-trips doubles") {
    const double vals[] = {0.1, -1.0 / 3.0, 1e-280, 123456.789, M_PI};
    for (double v : vals) {
        const std::string s = fmt_g17(v);
        CHECK(std::stod(s) == v);
        CHECK(fmt_g17(v) == s);
    }
}
