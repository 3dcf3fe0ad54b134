#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bmap/analysis.hpp"
#include "bmap/errors.hpp"
#include "bmap/rng.hpp"

#include "dtw_oracle.hpp"

#include <cmath>
#include <limits>

using namespace bmap;
using testsupport::dtw_brute_force;
using testsupport::seq1d;

namespace {

Trajectory toy_trajectory(int id, const std::string& group, double sih,
                          std::vector<Vec> positions) {
    Trajectory traj;
    traj.agent_id = id;
    traj.group = group;
    traj.sih = sih;
    int step = 0;
    for (Vec& p : positions) {
        traj.samples.push_back({step, std::move(p), "cell"});
        step += 1;
    }
    return traj;
}

} // namespace

TEST_CASE("identical sequences have zero distance") {
    auto a = seq1d({0, 1, 2, 3});
    CHECK(dtw_distance(a, a) == 0.0);
}

TEST_CASE("known warping examples") {
    CHECK(dtw_distance(seq1d({0, 3}), seq1d({0, 0, 3})) ==
          doctest::Approx(0.0).epsilon(1e-12));
    CHECK(dtw_distance(seq1d({0, 2}), seq1d({1})) == doctest::Approx(2.0).epsilon(1e-12));
    // Cross-checked against the exhaustive path oracle.
    CHECK(dtw_brute_force(seq1d({0, 3}), seq1d({0, 0, 3})) ==
          doctest::Approx(0.0).epsilon(1e-12));
    CHECK(dtw_brute_force(seq1d({0, 2}), seq1d({1})) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("empty and mismatched inputs are rejected") {
    std::vector<Vec> empty;
    auto a = seq1d({1, 2});
    CHECK_THROWS_AS(dtw_distance(empty, a), DataError);
    CHECK_THROWS_AS(dtw_distance(a, empty), DataError);
    std::vector<Vec> mixed{{0.0}, {0.0, 1.0}};
    CHECK_THROWS_AS(dtw_distance(mixed, a), DataError);
}

TEST_CASE("narrow bands are rejected, wide bands reach the exact answer") {
    auto a = seq1d({0, 1, 2, 3, 4, 5});
    auto b = seq1d({0, 5});
    CHECK_THROWS_AS(dtw_distance(a, b, 1), ConfigError);
    CHECK_THROWS_AS(dtw_distance(a, b, -2), ConfigError);
    CHECK(dtw_distance(a, b, 4) >= dtw_distance(a, b));
    CHECK(dtw_distance(a, b, 5) == doctest::Approx(dtw_distance(a, b)));
}

TEST_CASE("fuzzed short sequences match the enumeration oracle") {
    StreamRng rng(2024, 0, 17);
    for (int trial = 0; trial < 300; ++trial) {
        std::size_t dims = 1 + rng.next_u64() % 3;
        std::size_t la = 1 + rng.next_u64() % 6;
        std::size_t lb = 1 + rng.next_u64() % 6;
        std::vector<Vec> a(la), b(lb);
        for (Vec& v : a) {
            v.resize(dims);
            for (double& x : v) x = rng.uniform(-10, 10);
        }
        for (Vec& v : b) {
            v.resize(dims);
            for (double& x : v) x = rng.uniform(-10, 10);
        }
        double exact = dtw_distance(a, b);
        double oracle = dtw_brute_force(a, b);
        CHECK(exact == doctest::Approx(oracle).epsilon(1e-9));
        CHECK(dtw_distance(b, a) == doctest::Approx(exact).epsilon(1e-12)); // symmetry

        std::size_t diff = la > lb ? la - lb : lb - la;
        int window = static_cast<int>(diff + rng.next_u64() % 4);
        CHECK(dtw_distance(a, b, window) >= exact - 1e-9);

        // Euclidean homogeneity: scaling inputs scales the cost.
        double c = rng.uniform(0.1, 5);
        std::vector<Vec> ca = a, cb = b;
        for (Vec& v : ca)
            for (double& x : v) x *= c;
        for (Vec& v : cb)
            for (double& x : v) x *= c;
        CHECK(dtw_distance(ca, cb) == doctest::Approx(c * exact).epsilon(1e-9));
    }
}

TEST_CASE("pairwise profile matches direct dtw calls") {
    std::vector<Trajectory> trajectories;
    trajectories.push_back(toy_trajectory(2, "b", 1, {{0, 0}, {1, 0}, {2, 0}}));
    trajectories.push_back(toy_trajectory(0, "a", 0, {{0, 0}, {0, 1}}));
    trajectories.push_back(toy_trajectory(1, "a", 0, {{5, 5}, {6, 5}}));

    DtwProfile profile = pairwise_profile(trajectories);
    REQUIRE(profile.entries.size() == 3);
    CHECK(profile.entries[0].agent_id == 0); // sorted by id
    CHECK(profile.entries[1].agent_id == 1);
    CHECK(profile.entries[2].agent_id == 2);

    std::vector<Vec> s0{{0, 0}, {0, 1}};
    std::vector<Vec> s1{{5, 5}, {6, 5}};
    std::vector<Vec> s2{{0, 0}, {1, 0}, {2, 0}};
    double d01 = dtw_distance(s0, s1);
    double d02 = dtw_distance(s0, s2);
    double d12 = dtw_distance(s1, s2);
    CHECK(profile.matrix[0 * 3 + 1] == doctest::Approx(d01));
    CHECK(profile.matrix[0 * 3 + 2] == doctest::Approx(d02));
    CHECK(profile.matrix[1 * 3 + 2] == doctest::Approx(d12));
    CHECK(profile.matrix[0 * 3 + 0] == 0.0);
    CHECK(profile.matrix[2 * 3 + 1] == profile.matrix[1 * 3 + 2]);
    CHECK(profile.entries[0].mean_dtw == doctest::Approx((d01 + d02) / 2));

    // Worker count must not change anything.
    ProfileOptions options;
    options.workers = 4;
    DtwProfile parallel = pairwise_profile(trajectories, options);
    for (std::size_t i = 0; i < profile.matrix.size(); ++i)
        CHECK(parallel.matrix[i] == profile.matrix[i]);
}

TEST_CASE("identical trajectories give zero means") {
    std::vector<Trajectory> trajectories;
    trajectories.push_back(toy_trajectory(0, "a", 0, {{1, 1}, {2, 2}}));
    trajectories.push_back(toy_trajectory(1, "a", 0, {{1, 1}, {2, 2}}));
    DtwProfile profile = pairwise_profile(trajectories);
    CHECK(profile.entries[0].mean_dtw == 0.0);
    CHECK(profile.entries[1].mean_dtw == 0.0);
}

TEST_CASE("profile rejects bad inputs") {
    std::vector<Trajectory> one;
    one.push_back(toy_trajectory(0, "a", 0, {{0, 0}}));
    CHECK_THROWS_AS(pairwise_profile(one), DataError);

    std::vector<Trajectory> mismatched;
    mismatched.push_back(toy_trajectory(0, "a", 0, {{0, 0}}));
    mismatched.push_back(toy_trajectory(1, "a", 0, {{0, 0, 0}}));
    CHECK_THROWS_AS(pairwise_profile(mismatched), DataError);
}

TEST_CASE("polarization order parameter") {
    auto make = [](Vec h) {
        AgentState a;
        a.heading = std::move(h);
        return a;
    };
    std::vector<AgentState> aligned{make({1, 0}), make({1, 0}), make({1, 0})};
    CHECK(polarization(aligned) == doctest::Approx(1.0));
    std::vector<AgentState> opposed{make({1, 0}), make({-1, 0})};
    CHECK(polarization(opposed) == doctest::Approx(0.0));
    std::vector<AgentState> orthogonal{make({1, 0}), make({0, 1})};
    CHECK(polarization(orthogonal) == doctest::Approx(std::sqrt(2.0) / 2).epsilon(1e-12));
    CHECK_THROWS_AS(polarization({}), DataError);
}

TEST_CASE("polarization is rotation invariant") {
    StreamRng rng(31, 4, 8);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<AgentState> population(5);
        for (AgentState& agent : population) {
            agent.heading.resize(2);
            rng.unit_vector(agent.heading);
        }
        double base = polarization(population);
        double angle = rng.uniform(0, 6.28318);
        double c = std::cos(angle), s = std::sin(angle);
        for (AgentState& agent : population) {
            double x = agent.heading[0], y = agent.heading[1];
            agent.heading = {c * x - s * y, s * x + c * y};
        }
        CHECK(polarization(population) == doctest::Approx(base).epsilon(1e-9));
    }
}

namespace {

DtwProfile profile_with_means(const std::vector<double>& means) {
    DtwProfile profile;
    for (std::size_t i = 0; i < means.size(); ++i)
        profile.entries.push_back(
            {static_cast<int>(i), "g" + std::to_string(i % 3), 0.0, means[i]});
    return profile;
}

} // namespace

TEST_CASE("explicit thresholds follow the cut-point rule") {
    DtwProfile profile = profile_with_means({150, 50, 5, 100, 10});
    auto labels = classify_phases(profile, std::make_pair(10.0, 100.0));
    CHECK(labels[0] == PhaseLabel::Nomadic);  // > 100
    CHECK(labels[1] == PhaseLabel::Flocking); // in (10, 100]
    CHECK(labels[2] == PhaseLabel::Stampede); // <= 10
    CHECK(labels[3] == PhaseLabel::Flocking); // boundary hi
    CHECK(labels[4] == PhaseLabel::Stampede); // boundary lo
    CHECK_THROWS_AS(classify_phases(profile, std::make_pair(100.0, 10.0)), ConfigError);
}

TEST_CASE("auto classification separates three bands and is total") {
    std::vector<double> means;
    for (int i = 0; i < 10; ++i) means.push_back(200 + i);
    for (int i = 0; i < 10; ++i) means.push_back(50 + i);
    for (int i = 0; i < 10; ++i) means.push_back(1 + 0.1 * i);
    DtwProfile profile = profile_with_means(means);
    auto labels = classify_phases(profile, std::nullopt);
    for (int i = 0; i < 10; ++i) {
        CHECK(labels[i] == PhaseLabel::Nomadic);
        CHECK(labels[10 + i] == PhaseLabel::Flocking);
        CHECK(labels[20 + i] == PhaseLabel::Stampede);
    }
}

TEST_CASE("auto classification tie-breaks toward stampede") {
    DtwProfile profile = profile_with_means({7, 7, 7, 7});
    auto labels = classify_phases(profile, std::nullopt);
    for (PhaseLabel label : labels) CHECK(label == PhaseLabel::Stampede);
}

TEST_CASE("auto classification needs three agents") {
    DtwProfile profile = profile_with_means({1, 2});
    CHECK_THROWS_AS(classify_phases(profile, std::nullopt), DataError);
}

TEST_CASE("profile table round-trips") {
    DtwProfile profile;
    profile.entries.push_back({0, "nomad", 0.0, 123.25});
    profile.entries.push_back({1, "stampede", std::numeric_limits<double>::infinity(), 1.5});
    std::vector<PhaseLabel> phases{PhaseLabel::Nomadic, PhaseLabel::Stampede};
    std::string table = format_profile_table(profile, phases);
    auto rows = parse_profile_table(table);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].agent_id == 0);
    CHECK(rows[0].group == "nomad");
    CHECK(rows[0].mean_dtw == 123.25);
    CHECK(rows[0].phase == "Nomadic");
    CHECK(std::isinf(rows[1].sih));
    CHECK(rows[1].phase == "Stampede");
    CHECK_THROWS_AS(parse_profile_table("nonsense"), DataError);
}

TEST_CASE("phase summary counts per group") {
    DtwProfile profile;
    profile.entries.push_back({0, "nomad", 0.0, 100.0});
    profile.entries.push_back({1, "nomad", 0.0, 90.0});
    profile.entries.push_back({2, "flock", 2.0, 10.0});
    std::vector<PhaseLabel> phases{PhaseLabel::Nomadic, PhaseLabel::Nomadic,
                                   PhaseLabel::Flocking};
    std::string summary = format_phase_summary(profile, phases);
    CHECK(summary == "group\tsih\tnomadic\tflocking\tstampede\n"
                     "nomad\t0\t2\t0\t0\n"
                     "flock\t2\t0\t1\t0\n");
}
