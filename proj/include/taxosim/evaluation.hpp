#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "taxosim/measures.hpp"

namespace taxosim {

struct RatingRow {
    std::string word1;
    std::string word2;
    double rating = 0.0;
    std::vector<std::optional<double>> extras;  // aligned with extra_columns; nullopt = NA
};

// Word pairs with human similarity ratings plus optional named value columns.
struct RatingDataset {
    std::string name;
    std::vector<std::string> extra_columns;
    std::vector<RatingRow> rows;

    int extra_index(const std::string& column) const;  // throws LookupError
};

// TSV with a header row; the first three columns are word1, word2 and the
// rating, the rest are named extras where the literal "NA" marks a missing
// value.
RatingDataset load_ratings(std::istream& in, const std::string& name = "ratings");
RatingDataset load_ratings_file(const std::string& path);

// Sample product-moment correlation. Throws Error on fewer than two points,
// a length mismatch, or zero variance in either argument.
double pearson(const std::vector<double>& x, const std::vector<double>& y);

struct SkippedPair {
    std::string word1;
    std::string word2;
    std::string reason;
};

struct EvalReport {
    std::string dataset;
    std::string id;  // column name or measure name
    int n_pairs_used = 0;
    double r = 0.0;
    std::vector<SkippedPair> skipped;
};

// Correlation of the rating column against one extra column; NA rows are
// skipped and recorded.
EvalReport evaluate_column(const RatingDataset& ds, const std::string& column);

// Correlation of the rating column against the measure's word similarities
// (distances converted through distance_to_similarity first). Pairs the
// measure cannot score are skipped with the error message as the reason.
EvalReport evaluate_measure(const Taxonomy& t, const IcTable* ic, const MeasureConfig& cfg,
                            MeasureId id, const RatingDataset& ds);

struct SweepResult {
    std::vector<double> alphas;
    std::vector<double> betas;
    std::vector<std::vector<double>> r;  // r[i][j] for (alphas[i], betas[j])
    std::size_t best_alpha = 0;
    std::size_t best_beta = 0;
    std::vector<std::string> warnings;
};

inline const std::vector<double>& default_sweep_alphas() {
    static const std::vector<double> v{2.0, 1.0, 0.5, 0.0, -1.0, -2.0};
    return v;
}
inline const std::vector<double>& default_sweep_betas() {
    static const std::vector<double> v{1.0, 0.5, 0.3, 0.2};
    return v;
}

// Grid of combined-distance correlations over (alpha, beta); the argmax is
// the first maximal cell in row-major order.
SweepResult parameter_sweep(const Taxonomy& t, const IcTable& ic, const MeasureConfig& base,
                            const RatingDataset& ds, const std::vector<double>& alphas,
                            const std::vector<double>& betas);

// Copy of the dataset without the given pair (unordered match); the name
// records the removal. Throws LookupError when the pair is absent.
RatingDataset ablate_pair(const RatingDataset& ds, const std::string& w1, const std::string& w2);

}  // namespace taxosim
