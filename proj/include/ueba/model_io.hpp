#pragma once

#include <string>
#include <vector>

#include "ueba/forest.hpp"
#include "ueba/standardizer.hpp"

namespace ueba {

// A trained classifier bundle: the feature columns it was fit on, the
// training-set scaler, and the forest. Stored as a little-endian binary file,
// magic "UEBARF01" (see README for the field layout).
struct TrainedModel {
  std::string selector;                    // feature group used at training
  std::vector<std::string> feature_names;  // column order expected by predict
  Standardizer standardizer;
  RandomForest forest;
};

void save_model(const TrainedModel& model, const std::string& path);
TrainedModel load_model(const std::string& path);

}  // namespace ueba
