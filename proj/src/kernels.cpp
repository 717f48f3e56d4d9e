#include "adl/kernels.hpp"

#include <exception>

#include <omp.h>

namespace adl::kernels {

namespace {

// Exceptions cannot cross an OpenMP region. Keep the lowest-index failure so
// the parallel kernels throw what the serial ones would.
class FirstError {
 public:
  void capture(long index) {
#pragma omp critical(adl_first_error)
    {
      if (!error_ || index < index_) {
        error_ = std::current_exception();
        index_ = index;
      }
    }
  }
  void rethrow() const {
    if (error_) std::rethrow_exception(error_);
  }

 private:
  std::exception_ptr error_;
  long index_ = 0;
};

}  // namespace

std::vector<OccurrenceVerdict> score_batch_serial(const DefinitionSet& defs, std::span<const Observation> obs,
                                                  double atomic_share) {
  std::vector<OccurrenceVerdict> out;
  out.reserve(obs.size());
  for (const auto& o : obs) out.push_back(detect_occurrence(defs.at(o.activity), o, atomic_share));
  return out;
}

std::vector<OccurrenceVerdict> score_batch(const DefinitionSet& defs, std::span<const Observation> obs,
                                           double atomic_share) {
  std::vector<OccurrenceVerdict> out(obs.size());
  FirstError err;
  const long n = static_cast<long>(obs.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) {
    try {
      out[i] = detect_occurrence(defs.at(obs[i].activity), obs[i], atomic_share);
    } catch (...) {
      err.capture(i);
    }
  }
  err.rethrow();
  return out;
}

std::vector<std::string> knn_label_batch_serial(std::span<const LabeledInstant> train,
                                                std::span<const TimeInstant> queries, std::size_t k) {
  std::vector<std::string> out;
  out.reserve(queries.size());
  for (const auto& q : queries) out.push_back(knn_label(train, q, k));
  return out;
}

std::vector<std::string> knn_label_batch(std::span<const LabeledInstant> train, std::span<const TimeInstant> queries,
                                         std::size_t k) {
  std::vector<std::string> out(queries.size());
  FirstError err;
  const long n = static_cast<long>(queries.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (long i = 0; i < n; ++i) {
    try {
      out[i] = knn_label(train, queries[i], k);
    } catch (...) {
      err.capture(i);
    }
  }
  err.rethrow();
  return out;
}

std::vector<std::string> knn_leave_one_out(std::span<const LabeledInstant> instants, std::size_t k) {
  std::vector<std::string> out(instants.size());
  FirstError err;
  const long n = static_cast<long>(instants.size());
#pragma omp parallel
  {
    std::vector<LabeledInstant> others;
#pragma omp for schedule(dynamic, 16)
    for (long i = 0; i < n; ++i) {
      try {
        others.assign(instants.begin(), instants.begin() + i);
        others.insert(others.end(), instants.begin() + i + 1, instants.end());
        out[i] = knn_label(others, instants[i].instant, k);
      } catch (...) {
        err.capture(i);
      }
    }
  }
  err.rethrow();
  return out;
}

std::vector<ConfidenceVector> predict_batch_serial(const RecommenderModel& model,
                                                   std::span<const FeatureVector> features) {
  std::vector<ConfidenceVector> out;
  out.reserve(features.size());
  for (const auto& f : features) out.push_back(predict_confidences(model, f));
  return out;
}

std::vector<ConfidenceVector> predict_batch(const RecommenderModel& model, std::span<const FeatureVector> features) {
  std::vector<ConfidenceVector> out(features.size());
  FirstError err;
  const long n = static_cast<long>(features.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) {
    try {
      out[i] = predict_confidences(model, features[i]);
    } catch (...) {
      err.capture(i);
    }
  }
  err.rethrow();
  return out;
}

int thread_count() { return omp_get_max_threads(); }

}  // namespace adl::kernels
