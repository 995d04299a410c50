#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include <json.hpp>

#include "c45/eval.hpp"
#include "c45/features.hpp"
#include "oracles.hpp"

using namespace c45;

namespace {

Prediction pred(std::size_t truth, std::vector<double> dist, double weight = 1.0) {
  Prediction p;
  p.true_class = truth;
  p.distribution = std::move(dist);
  p.predicted_class = 0;
  for (std::size_t j = 1; j < p.distribution.size(); ++j)
    if (p.distribution[j] > p.distribution[p.predicted_class]) p.predicted_class = j;
  p.weight = weight;
  return p;
}

ConfusionMatrix matrix2(double aa, double ab, double ba, double bb) {
  ConfusionMatrix cm;
  cm.class_order = {"A", "B"};
  cm.cells = {aa, ab, ba, bb};
  return cm;
}

std::vector<Prediction> random_predictions(std::mt19937_64& rng, std::size_t k) {
  auto unit = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  std::size_t n = 3 + rng() % 28;
  std::vector<Prediction> preds;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> dist(k, 0.0);
    double sum = 0.0;
    for (auto& d : dist) {
      d = unit() < 0.25 ? 0.25 : unit();  // deliberate score ties
      sum += d;
    }
    for (auto& d : dist) d /= sum;
    preds.push_back(pred(rng() % k, dist, rng() % 3 == 0 ? 0.5 : 1.0));
  }
  return preds;
}

Dataset two_class_dataset(std::size_t n_a, std::size_t n_b) {
  std::string text = "x,c\n";
  for (std::size_t i = 0; i < n_a; ++i) text += std::to_string(i) + ",A\n";
  for (std::size_t i = 0; i < n_b; ++i) text += std::to_string(100 + i) + ",B\n";
  return assign_class(parse_dataset(text, DataFormat::csv), "c");
}

}  // namespace

TEST_CASE("confusion matrix counting") {
  std::vector<Prediction> preds = {pred(0, {0.9, 0.1}), pred(0, {0.2, 0.8}),
                                   pred(1, {0.3, 0.7})};
  ConfusionMatrix cm = confusion_matrix(preds, {"A", "B"});
  CHECK(cm.at(0, 0) == 1.0);
  CHECK(cm.at(0, 1) == 1.0);
  CHECK(cm.at(1, 0) == 0.0);
  CHECK(cm.at(1, 1) == 1.0);
  CHECK(cm.total() == 3.0);

  CHECK(confusion_matrix({}, {"A", "B"}).total() == 0.0);
  Prediction bad = pred(0, {1.0});
  CHECK_THROWS_AS(confusion_matrix({bad}, {"A", "B"}), DataError);
}

TEST_CASE("accuracy") {
  CHECK(accuracy(matrix2(3, 0, 0, 2)) == 100.0);
  CHECK(accuracy(matrix2(0, 3, 2, 0)) == 0.0);
  CHECK(accuracy(matrix2(20, 5, 10, 15)) == 70.0);
  CHECK_THROWS_AS(accuracy(matrix2(0, 0, 0, 0)), DataError);
}

TEST_CASE("kappa") {
  ConfusionMatrix diag;
  diag.class_order = {"A", "B", "C"};
  diag.cells = {4, 0, 0, 0, 3, 0, 0, 0, 2};
  CHECK(kappa(diag) == doctest::Approx(1.0).epsilon(1e-12));

  CHECK(kappa(matrix2(20, 5, 10, 15)) == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(kappa(matrix2(1, 1, 1, 1)) == doctest::Approx(0.0).epsilon(1e-12));

  ConfusionMatrix single;
  single.class_order = {"A", "B"};
  single.cells = {5, 0, 0, 0};
  CHECK(kappa(single) == 0.0);  // chance agreement is total
}

TEST_CASE("error metrics") {
  SUBCASE("deterministic correct predictions score zero") {
    std::vector<Prediction> preds = {pred(0, {1.0, 0.0}), pred(1, {0.0, 1.0})};
    ErrorStats s = error_metrics(preds, {{"A", "B"}, {1.0, 1.0}, 2.0});
    CHECK(s.mae == 0.0);
    CHECK(s.rmse == 0.0);
    CHECK(*s.rae_pct == 0.0);
    CHECK(*s.rrse_pct == 0.0);
  }
  SUBCASE("the prior baseline scores exactly 100%") {
    ClassFrequency prior{{"A", "B", "C"}, {6.0, 3.0, 1.0}, 10.0};
    std::vector<double> q = {0.6, 0.3, 0.1};
    std::vector<Prediction> preds = {pred(0, q), pred(1, q), pred(0, q), pred(2, q)};
    ErrorStats s = error_metrics(preds, prior);
    CHECK(*s.rae_pct == doctest::Approx(100.0).epsilon(1e-12));
    CHECK(*s.rrse_pct == doctest::Approx(100.0).epsilon(1e-12));
  }
  SUBCASE("hand-computed single instance") {
    std::vector<Prediction> preds = {pred(0, {0.8, 0.2})};
    ErrorStats s = error_metrics(preds, {{"A", "B"}, {1.0, 1.0}, 2.0});
    CHECK(s.mae == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(s.rmse == doctest::Approx(0.2).epsilon(1e-12));
  }
  SUBCASE("a perfect one-class baseline is undefined") {
    std::vector<Prediction> preds = {pred(0, {1.0}), pred(0, {1.0})};
    ErrorStats s = error_metrics(preds, {{"A"}, {5.0}, 5.0});
    CHECK_FALSE(s.rae_pct.has_value());
    CHECK_FALSE(s.rrse_pct.has_value());
  }
  SUBCASE("empty prediction list is an error") {
    CHECK_THROWS_AS(error_metrics({}, {{"A"}, {1.0}, 1.0}), DataError);
  }
}

TEST_CASE("roc_area") {
  auto two = [](double pa, std::size_t truth) { return pred(truth, {pa, 1.0 - pa}); };
  SUBCASE("perfect, reversed and tied rankings") {
    std::vector<Prediction> perfect = {two(0.9, 0), two(0.8, 0), two(0.3, 1), two(0.1, 1)};
    CHECK(*roc_area(perfect, 0) == 1.0);
    std::vector<Prediction> reversed = {two(0.1, 0), two(0.2, 0), two(0.8, 1), two(0.9, 1)};
    CHECK(*roc_area(reversed, 0) == 0.0);
    std::vector<Prediction> tied = {two(0.5, 0), two(0.5, 0), two(0.5, 1), two(0.5, 1)};
    CHECK(*roc_area(tied, 0) == 0.5);
  }
  SUBCASE("three of four pairs concordant") {
    std::vector<Prediction> preds = {two(0.9, 0), two(0.4, 0), two(0.6, 1), two(0.1, 1)};
    CHECK(*roc_area(preds, 0) == 0.75);
  }
  SUBCASE("degenerate sides are undefined") {
    std::vector<Prediction> only_pos = {two(0.9, 0), two(0.4, 0)};
    CHECK_FALSE(roc_area(only_pos, 0).has_value());
    CHECK_FALSE(roc_area(only_pos, 1).has_value());
  }
  SUBCASE("weights count as mass") {
    // one positive above, one tied group below: (2*3 + 0.5*0) / (2*3)
    std::vector<Prediction> preds = {pred(0, {0.8, 0.2}, 2.0), pred(1, {0.5, 0.5}, 3.0)};
    CHECK(*roc_area(preds, 0) == 1.0);
    preds.push_back(pred(0, {0.5, 0.5}, 1.0));  // ties the negative
    CHECK(*roc_area(preds, 0) == doctest::Approx((2.0 * 3.0 + 0.5 * 3.0) / 9.0).epsilon(1e-12));
  }
  SUBCASE("invariant under monotone score transforms") {
    std::mt19937_64 rng(41);
    for (int it = 0; it < 20; ++it) {
      auto preds = random_predictions(rng, 2);
      auto mapped = preds;
      for (auto& p : mapped) {
        double s = p.distribution[0];
        p.distribution[0] = s * s * s;  // strictly monotone on [0,1]
        p.distribution[1] = 1.0 - p.distribution[0];
      }
      auto a = roc_area(preds, 0);
      auto b = roc_area(mapped, 0);
      REQUIRE(a.has_value() == b.has_value());
      if (a) CHECK(*a == *b);
    }
  }
  SUBCASE("rank statistic equals trapezoidal integration") {
    std::mt19937_64 rng(42);
    for (int it = 0; it < 30; ++it) {
      std::size_t k = 2 + rng() % 2;
      auto preds = random_predictions(rng, k);
      for (std::size_t c = 0; c < k; ++c) {
        auto mine = roc_area(preds, c);
        auto ref = oracle::trapezoid_auc(preds, c);
        REQUIRE(mine.has_value() == ref.has_value());
        if (mine) CHECK(*mine == doctest::Approx(*ref).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("per-class metrics") {
  SUBCASE("diagonal matrix is perfect everywhere") {
    ConfusionMatrix cm;
    cm.class_order = {"A", "B", "C"};
    cm.cells = {4, 0, 0, 0, 3, 0, 0, 0, 2};
    auto rows = per_class_metrics(cm, {});
    for (const auto& row : rows) {
      CHECK(row.tp_rate == 1.0);
      CHECK(row.fp_rate == 0.0);
      CHECK(row.precision == 1.0);
      CHECK(row.f_measure == 1.0);
    }
  }
  SUBCASE("zero-support classes carry no weight in the average") {
    ConfusionMatrix cm;
    cm.class_order = {"A", "B", "C"};
    cm.cells = {4, 0, 0, 0, 6, 0, 0, 0, 0};  // C never occurs
    auto rows = per_class_metrics(cm, {});
    CHECK(rows[2].support == 0.0);
    CHECK(rows[2].tp_rate == 0.0);
    PerClassRow avg = weighted_average(rows);
    CHECK(avg.tp_rate == 1.0);
    CHECK(avg.support == 10.0);
  }
  SUBCASE("micro/macro identity holds on random matrices") {
    std::mt19937_64 rng(43);
    for (int it = 0; it < 50; ++it) {
      std::size_t k = 2 + rng() % 3;
      ConfusionMatrix cm;
      for (std::size_t c = 0; c < k; ++c) cm.class_order.push_back("C" + std::to_string(c));
      cm.cells.assign(k * k, 0.0);
      for (auto& cell : cm.cells) cell = static_cast<double>(rng() % 6);
      if (cm.total() == 0.0) continue;
      auto rows = per_class_metrics(cm, {});
      double micro = 0.0;
      for (std::size_t c = 0; c < k; ++c) micro += rows[c].support * rows[c].tp_rate;
      CHECK(accuracy(cm) / 100.0 == doctest::Approx(micro / cm.total()).epsilon(1e-9));
      CHECK(kappa(cm) <= accuracy(cm) / 100.0 + 1e-12);  // kappa never exceeds p_o
    }
  }
}

TEST_CASE("stratified folds") {
  SUBCASE("exact divisibility gives identical per-class counts") {
    Dataset ds = two_class_dataset(60, 40);
    auto folds = stratified_folds(ds, 10, 1);
    REQUIRE(folds.size() == 10);
    for (const auto& fold : folds) {
      std::size_t a = 0, b = 0;
      for (auto idx : fold) (ds.instances[idx].values[1] == 0.0 ? a : b)++;
      CHECK(a == 6);
      CHECK(b == 4);
    }
  }
  SUBCASE("same seed, same folds") {
    Dataset ds = two_class_dataset(23, 17);
    CHECK(stratified_folds(ds, 7, 99) == stratified_folds(ds, 7, 99));
  }
  SUBCASE("round-robin remainder") {
    Dataset ds = two_class_dataset(3, 0);
    auto folds = stratified_folds(ds, 2, 5);
    std::multiset<std::size_t> sizes{folds[0].size(), folds[1].size()};
    CHECK(sizes == std::multiset<std::size_t>{1, 2});
  }
  SUBCASE("folds partition the index range") {
    std::mt19937_64 rng(44);
    for (int it = 0; it < 20; ++it) {
      Dataset ds = oracle::random_dataset(rng, {.max_instances = 25});
      std::size_t k = 2 + rng() % 3;
      if (k > ds.instances.size()) continue;
      auto folds = stratified_folds(ds, k, it);
      std::set<std::size_t> seen;
      for (const auto& fold : folds)
        for (auto idx : fold) CHECK(seen.insert(idx).second);
      CHECK(seen.size() == ds.instances.size());

      // per-class counts differ by at most one
      std::size_t n_classes = ds.class_spec().values.size();
      for (std::size_t c = 0; c < n_classes; ++c) {
        std::size_t lo = ds.instances.size(), hi = 0;
        for (const auto& fold : folds) {
          std::size_t count = 0;
          for (auto idx : fold)
            if (ds.instances[idx].values[*ds.class_index] == double(c)) ++count;
          lo = std::min(lo, count);
          hi = std::max(hi, count);
        }
        CHECK(hi - lo <= 1);
      }
    }
  }
  SUBCASE("errors") {
    Dataset ds = two_class_dataset(3, 2);
    CHECK_THROWS_AS(stratified_folds(ds, 6, 1), DataError);
    CHECK_THROWS_AS(stratified_folds(ds, 1, 1), DataError);
  }
}

TEST_CASE("cross_validate") {
  SUBCASE("pooled support equals the dataset weight") {
    Dataset ds = two_class_dataset(30, 20);
    EvalReport r = cross_validate(ds, 5, 1, {});
    CHECK(r.weighted_avg.support == doctest::Approx(50.0));
  }
  SUBCASE("a constant class scores perfectly with zero kappa") {
    Dataset ds = two_class_dataset(12, 0);
    EvalReport r = cross_validate(ds, 4, 1, {});
    CHECK(r.accuracy_pct == 100.0);
    CHECK(r.kappa == 0.0);
  }
  SUBCASE("deterministic given the seed") {
    auto records = generate_synthetic(120, 3, 0.1);
    Dataset ds = derive_student_dataset(records);
    EvalReport a = cross_validate(ds, 6, 9, {});
    EvalReport b = cross_validate(ds, 6, 9, {});
    CHECK(report_text(a) == report_text(b));
    CHECK(report_json(a) == report_json(b));
  }
  SUBCASE("planted rules are learnable") {
    auto records = generate_synthetic(600, 7, 0.0);
    Dataset ds = derive_student_dataset(records);
    EvalReport r = cross_validate(ds, 10, 1, {});
    CHECK(r.accuracy_pct >= 97.0);
  }
}

TEST_CASE("report identities") {
  std::mt19937_64 rng(45);
  for (int it = 0; it < 20; ++it) {
    std::size_t k = 2 + rng() % 2;
    auto preds = random_predictions(rng, k);
    std::vector<std::string> order;
    for (std::size_t c = 0; c < k; ++c) order.push_back("C" + std::to_string(c));
    ClassFrequency prior;
    prior.classes = order;
    prior.weights.assign(k, 1.0);
    prior.total = static_cast<double>(k);

    EvalReport r = make_report(preds, order, prior);
    // weighted average equals an independent recomputation
    double support = 0.0, tp = 0.0, f = 0.0;
    for (const auto& row : r.per_class) {
      support += row.support;
      tp += row.support * row.tp_rate;
      f += row.support * row.f_measure;
    }
    CHECK(r.weighted_avg.tp_rate == doctest::Approx(tp / support).epsilon(1e-9));
    CHECK(r.weighted_avg.f_measure == doctest::Approx(f / support).epsilon(1e-9));
    CHECK(r.accuracy_pct / 100.0 == doctest::Approx(tp / support).epsilon(1e-9));
  }
}

TEST_CASE("report rendering") {
  std::vector<Prediction> preds = {pred(0, {0.9, 0.1}), pred(0, {0.6, 0.4}),
                                   pred(1, {0.2, 0.8}), pred(1, {0.7, 0.3})};
  ClassFrequency prior{{"A", "B"}, {2.0, 2.0}, 4.0};
  EvalReport r = make_report(preds, {"A", "B"}, prior);

  std::string text = report_text(r);
  CHECK(text == report_text(r));
  CHECK(text.find("Correctly classified instances %") != std::string::npos);
  CHECK(text.find("Kappa statistic") != std::string::npos);
  CHECK(text.find("Root relative squared error %") != std::string::npos);
  CHECK(text.find("TP Rate") != std::string::npos);
  CHECK(text.find("Weighted Avg.") != std::string::npos);
  CHECK(text.find("75.000") != std::string::npos);  // 3 of 4 correct

  auto j = nlohmann::json::parse(report_json(r));
  CHECK(j.at("accuracy_pct").get<double>() == doctest::Approx(75.0));
  CHECK(j.at("per_class").size() == 2);
  CHECK(j.at("per_class")[0].at("class") == "A");
  CHECK(j.at("weighted_avg").contains("roc_area"));

  SUBCASE("undefined metrics render as markers") {
    std::vector<Prediction> one_class = {pred(0, {1.0}), pred(0, {1.0})};
    EvalReport d = make_report(one_class, {"A"}, {{"A"}, {2.0}, 2.0});
    std::string dt = report_text(d);
    CHECK(dt.find('?') != std::string::npos);
    auto dj = nlohmann::json::parse(report_json(d));
    CHECK(dj.at("rae_pct").is_null());
    CHECK(dj.at("per_class")[0].at("roc_area").is_null());
  }
}
