#pragma once

// Batch kernels over independent items. Each has an OpenMP version and a
// serial reference with identical results; tests compare the two and
// bench_kernels times them.

#include <span>
#include <string>
#include <vector>

#include "adl/activity_model.hpp"
#include "adl/recognition.hpp"
#include "adl/recommender.hpp"
#include "adl/temporal.hpp"

namespace adl::kernels {

std::vector<OccurrenceVerdict> score_batch_serial(const DefinitionSet& defs, std::span<const Observation> obs,
                                                  double atomic_share = kDefaultAtomicShare);
std::vector<OccurrenceVerdict> score_batch(const DefinitionSet& defs, std::span<const Observation> obs,
                                           double atomic_share = kDefaultAtomicShare);

std::vector<std::string> knn_label_batch_serial(std::span<const LabeledInstant> train,
                                                std::span<const TimeInstant> queries, std::size_t k);
std::vector<std::string> knn_label_batch(std::span<const LabeledInstant> train, std::span<const TimeInstant> queries,
                                         std::size_t k);

// Leave-one-out: instant i is labeled by the others. Needs |instants| > k.
std::vector<std::string> knn_leave_one_out(std::span<const LabeledInstant> instants, std::size_t k);

std::vector<ConfidenceVector> predict_batch_serial(const RecommenderModel& model,
                                                   std::span<const FeatureVector> features);
std::vector<ConfidenceVector> predict_batch(const RecommenderModel& model, std::span<const FeatureVector> features);

int thread_count();

}  // namespace adl::kernels
