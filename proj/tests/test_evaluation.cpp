#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "taxosim/evaluation.hpp"
#include "test_util.hpp"

using namespace taxosim;
using doctest::Approx;
using testutil::parse;

namespace {

RatingDataset mc30() { return load_ratings_file(testutil::data_path("miller-charles-30.tsv")); }

RatingDataset ratings_from(const std::string& text) {
    std::istringstream in(text);
    return load_ratings(in, "test");
}

}  // namespace

TEST_CASE("load_ratings: shipped dataset") {
    RatingDataset ds = mc30();
    CHECK(ds.rows.size() == 30);
    CHECK(ds.extra_columns ==
          std::vector<std::string>{"replication", "sim_edge", "sim_node", "sim_dist"});
    const RatingRow& first = ds.rows.front();
    CHECK(first.word1 == "car");
    CHECK(first.word2 == "automobile");
    CHECK(first.rating == 3.92);
    CHECK(first.extras.size() == 4);
    CHECK(first.extras[0] == 3.9);
    CHECK(first.extras[3] == 30.0);
    // the cemetery-woodland replication cell is NA
    const RatingRow& na_row = ds.rows[18];
    CHECK(na_row.word1 == "cemetery");
    CHECK(!na_row.extras[0].has_value());
    CHECK(na_row.extras[3] == 10.672);
}

TEST_CASE("load_ratings: synthetic and errors") {
    RatingDataset two = ratings_from("word1\tword2\trating\na\tb\t1.5\nc\td\t2.0\n");
    CHECK(two.rows.size() == 2);
    CHECK(two.extra_columns.empty());

    CHECK_THROWS_AS(ratings_from("word1\tword2\trating\na\tb\n"), ParseError);       // short row
    CHECK_THROWS_AS(ratings_from("word1\tword2\trating\na\tb\tNA\n"), ParseError);   // NA rating
    CHECK_THROWS_AS(ratings_from("word1\tword2\trating\na\tb\tx\n"), ParseError);    // bad number
    CHECK_THROWS_AS(ratings_from("word1\tword2\trating\na\tb\t1\n"), Error);         // 1 row
    CHECK_THROWS_AS(ratings_from(""), Error);
}

TEST_CASE("pearson: analytic cases") {
    CHECK(pearson({1, 2, 3}, {2, 4, 6}) == Approx(1.0).epsilon(1e-12));
    CHECK(pearson({1, 2, 3}, {3, 2, 1}) == Approx(-1.0).epsilon(1e-12));
    std::vector<double> x{0.3, 1.7, 2.2, 9.1};
    CHECK(pearson(x, x) == Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(pearson({1, 2}, {1, 2, 3}), Error);
    CHECK_THROWS_AS(pearson({1}, {1}), Error);
    CHECK_THROWS_AS(pearson({1, 1, 1}, {1, 2, 3}), Error);  // zero variance
}

TEST_CASE("pearson is invariant under affine transforms") {
    std::mt19937_64 rng(10001);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    for (int iter = 0; iter < 30; ++iter) {
        std::vector<double> x, y;
        for (int i = 0; i < 25; ++i) {
            x.push_back(u(rng));
            y.push_back(u(rng));
        }
        double base = pearson(x, y);
        double scale = std::exp(u(rng) / 2.0), shift = u(rng);
        std::vector<double> xs;
        for (double v : x) xs.push_back(scale * v + shift);
        CHECK(pearson(xs, y) == Approx(base).epsilon(1e-12));
        std::vector<double> xneg;
        for (double v : x) xneg.push_back(-scale * v + shift);
        CHECK(std::fabs(pearson(xneg, y)) == Approx(std::fabs(base)).epsilon(1e-12));
    }
}

TEST_CASE("pearson of the two human-rating columns") {
    // means vs. replication means over the 28 shared pairs
    RatingDataset ds = mc30();
    EvalReport rep = evaluate_column(ds, "replication");
    CHECK(rep.n_pairs_used == 28);
    CHECK(rep.skipped.size() == 2);
    CHECK(rep.r == Approx(0.9583445731).epsilon(1e-8));
}

TEST_CASE("evaluate_column reproduces the published summary correlations") {
    RatingDataset ds = mc30();
    CHECK(evaluate_column(ds, "sim_node").r == Approx(0.7941).epsilon(0.01 / 0.7941));
    CHECK(evaluate_column(ds, "sim_edge").r == Approx(0.6004).epsilon(0.01 / 0.6004));
    CHECK(evaluate_column(ds, "sim_dist").r == Approx(0.8282).epsilon(0.01 / 0.8282));
    // exact frozen values for regression
    CHECK(evaluate_column(ds, "sim_node").r == Approx(0.7940965174).epsilon(1e-8));
    CHECK(evaluate_column(ds, "sim_edge").r == Approx(0.6003886560).epsilon(1e-8));
    CHECK(evaluate_column(ds, "sim_dist").r == Approx(0.8284141774).epsilon(1e-8));
    CHECK(evaluate_column(ds, "sim_node").n_pairs_used == 30);
    CHECK_THROWS_AS(evaluate_column(ds, "nope"), LookupError);
}

TEST_CASE("evaluate_column bookkeeping: used + skipped = rows") {
    RatingDataset ds = mc30();
    for (const std::string& col : ds.extra_columns) {
        EvalReport rep = evaluate_column(ds, col);
        CHECK(rep.n_pairs_used + static_cast<int>(rep.skipped.size()) ==
              static_cast<int>(ds.rows.size()));
    }
}

TEST_CASE("evaluate_measure: perfectly linear fixture and reversal") {
    // chain taxonomy: distance from w0 grows one edge per step
    Taxonomy t = parse(
        "node c0 w0\nnode c1 w1\nnode c2 w2\nnode c3 w3\nnode c4 w4\n"
        "edge c1 c0 isa\nedge c2 c1 isa\nedge c3 c2 isa\nedge c4 c3 isa\n");
    MeasureConfig cfg;
    cfg.d_max = 10;
    RatingDataset ds = ratings_from(
        "word1\tword2\trating\n"
        "w0\tw1\t19\nw0\tw2\t18\nw0\tw3\t17\nw0\tw4\t16\n");
    EvalReport rep = evaluate_measure(t, nullptr, cfg, MeasureId::edge, ds);
    CHECK(rep.r == Approx(1.0).epsilon(1e-12));
    CHECK(rep.n_pairs_used == 4);

    RatingDataset rev = ratings_from(
        "word1\tword2\trating\n"
        "w0\tw1\t1\nw0\tw2\t2\nw0\tw3\t3\nw0\tw4\t4\n");
    CHECK(evaluate_measure(t, nullptr, cfg, MeasureId::edge, rev).r ==
          Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("evaluate_measure matches evaluate_column when the column is the measure") {
    Taxonomy t = parse(
        "node c0 w0\nnode c1 w1\nnode c2 w2\nnode c3 w3\nnode c4 w4\n"
        "edge c1 c0 isa\nedge c2 c1 isa\nedge c3 c2 isa\nedge c4 c3 isa\n");
    MeasureConfig cfg;
    cfg.d_max = 10;
    // extra column holds exactly the measure's output values
    std::ostringstream text;
    text << "word1\tword2\trating\tsim_edge\n";
    std::mt19937_64 rng(10002);
    const char* words[] = {"w0", "w1", "w2", "w3", "w4"};
    for (int i = 0; i < 8; ++i) {
        const char* a = words[rng() % 5];
        const char* b = words[rng() % 5];
        double v = word_similarity(t, nullptr, cfg, MeasureId::edge, a, b).value;
        double rating = static_cast<double>(rng() % 40) / 7.0;
        text << a << "\t" << b << "\t" << rating << "\t" << v << "\n";
    }
    RatingDataset ds = ratings_from(text.str());
    double via_measure = evaluate_measure(t, nullptr, cfg, MeasureId::edge, ds).r;
    double via_column = evaluate_column(ds, "sim_edge").r;
    CHECK(via_measure == Approx(via_column).epsilon(1e-12));
}

TEST_CASE("evaluate_measure skips unresolvable pairs with reasons") {
    Taxonomy t = parse("node a wa\nnode b wb\nedge b a isa\n");
    MeasureConfig cfg;
    RatingDataset ds = ratings_from(
        "word1\tword2\trating\n"
        "wa\twb\t3\nwa\twa\t4\nwa\tmissing\t1\n");
    EvalReport rep = evaluate_measure(t, nullptr, cfg, MeasureId::edge, ds);
    CHECK(rep.n_pairs_used == 2);
    REQUIRE(rep.skipped.size() == 1);
    CHECK(rep.skipped[0].word2 == "missing");
    CHECK(rep.skipped[0].reason.find("unknown word") != std::string::npos);
    // down to one usable pair: reported as an error
    RatingDataset bad = ratings_from("word1\tword2\trating\nwa\tmissing\t1\nwb\tmissing\t2\n");
    CHECK_THROWS_AS(evaluate_measure(t, nullptr, cfg, MeasureId::edge, bad), Error);
}

TEST_CASE("distance conversion leaves |r| unchanged") {
    Taxonomy t = load_taxonomy(testutil::data_path("figure1.tax"));
    IcTable ic = read_ic_file(testutil::data_path("figure1.ic"));
    RatingDataset ds = ratings_from(
        "word1\tword2\trating\n"
        "car\tbicycle\t3.0\ncar\tfork\t1.2\nbicycle\tfork\t1.0\ncar\tautomobile\t4.0\n");
    MeasureConfig c1;
    c1.conversion_c = 100.0;
    MeasureConfig c2;
    c2.conversion_c = 0.0;
    double r1 = evaluate_measure(t, &ic, c1, MeasureId::jc_simplified, ds).r;
    double r2 = evaluate_measure(t, &ic, c2, MeasureId::jc_simplified, ds).r;
    CHECK(r1 == Approx(r2).epsilon(1e-12));
}

TEST_CASE("parameter_sweep: single cell, argmax, default axes, warnings") {
    Taxonomy t = load_taxonomy(testutil::data_path("figure1.tax"));
    IcTable ic = read_ic_file(testutil::data_path("figure1.ic"));
    RatingDataset ds = ratings_from(
        "word1\tword2\trating\n"
        "car\tbicycle\t3.0\ncar\tfork\t1.2\nbicycle\tfork\t1.0\ncar\tautomobile\t4.0\n");
    MeasureConfig base;

    SweepResult single = parameter_sweep(t, ic, base, ds, {0.5}, {0.3});
    MeasureConfig cfg = base;
    cfg.alpha = 0.5;
    cfg.beta = 0.3;
    CHECK(single.r[0][0] == Approx(evaluate_measure(t, &ic, cfg, MeasureId::jc, ds).r));
    CHECK(single.best_alpha == 0);
    CHECK(single.best_beta == 0);

    SweepResult grid =
        parameter_sweep(t, ic, base, ds, default_sweep_alphas(), default_sweep_betas());
    CHECK(grid.r.size() == 6);
    CHECK(grid.r[0].size() == 4);
    // argmax equals exhaustive recomputation, ties resolved to the first cell
    double best = -2.0;
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = 0; i < grid.r.size(); ++i)
        for (std::size_t j = 0; j < grid.r[i].size(); ++j)
            if (grid.r[i][j] > best) {
                best = grid.r[i][j];
                bi = i;
                bj = j;
            }
    CHECK(grid.best_alpha == bi);
    CHECK(grid.best_beta == bj);
    CHECK(!grid.warnings.empty());  // negative alpha rows flagged

    CHECK_THROWS_AS(parameter_sweep(t, ic, base, ds, {}, {0.3}), Error);
}

TEST_CASE("ablate_pair: published ablation and bookkeeping") {
    RatingDataset ds = mc30();
    RatingDataset ab = ablate_pair(ds, "furnace", "stove");
    CHECK(ab.rows.size() == 29);
    CHECK(ab.name.find("furnace") != std::string::npos);
    CHECK(evaluate_column(ab, "sim_node").r == Approx(0.8191).epsilon(0.01 / 0.8191));
    CHECK(evaluate_column(ab, "sim_edge").r == Approx(0.6042).epsilon(0.01 / 0.6042));
    CHECK(evaluate_column(ab, "sim_dist").r == Approx(0.8654).epsilon(0.01 / 0.8654));
    CHECK(evaluate_column(ab, "sim_node").r == Approx(0.8191076066).epsilon(1e-8));
    CHECK(evaluate_column(ab, "sim_edge").r == Approx(0.6041925574).epsilon(1e-8));
    CHECK(evaluate_column(ab, "sim_dist").r == Approx(0.8633128564).epsilon(1e-8));

    // unordered match
    CHECK(ablate_pair(ds, "stove", "furnace").rows.size() == 29);
    CHECK_THROWS_AS(ablate_pair(ds, "car", "fork"), LookupError);

    // re-adding the removed row restores the correlation exactly
    RatingDataset back = ab;
    back.rows.push_back(ds.rows[8]);  // furnace-stove row
    CHECK(evaluate_column(back, "sim_dist").r ==
          Approx(evaluate_column(ds, "sim_dist").r).epsilon(1e-12));
}
