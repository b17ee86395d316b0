#include "counterbench/fixtures.hpp"

namespace counterbench::fixtures {

const std::string_view kZiklo =
    "Imagine a self-contained, hypothetical world with only the following conditions, and without any unmentioned "
    "factors or causal relationships: Ziklo has a direct effect on not Blaf, Blaf has a direct effect on Trune, Trune "
    "has a direct effect on not Vork, Vork or Trune has a direct effect on Sline, Sline has a direct effect on Frim, "
    "not Frim and Trune has a direct effect on Qado, and Qado has a direct effect on Lumbo. We know that Ziklo causes "
    "not Blaf, Blaf causes Trune, Trune causes not Vork, Vork or Trune causes Sline, Sline causes Frim, not Frim and "
    "Trune causes Qado, and Qado causes Lumbo. Would Lumbo occur if not Ziklo instead of Ziklo?";

const std::string_view kNuv =
    "Imagine a self-contained, hypothetical world with only the following conditions, and without any unmentioned "
    "factors or causal relationships: Nuv has a direct effect on Splee, Blen and Druk, not Druk has a direct effect on "
    "Plog, Plog has a direct effect on Skrim, Skrim or Druk has a direct effect on Zimb, Zimb has a direct effect on "
    "Yurd, and Yurd has a direct effect on Wrox. We know that Nuv causes Splee, Blen and Druk, not Druk causes Plog, "
    "Plog causes Skrim, Skrim or Druk causes Zimb, Zimb causes Yurd, and Yurd causes Wrox. Would Wrox occur if not Nuv "
    "and not Splee?";

const std::string_view kPraf =
    "Imagine a self-contained, hypothetical world with only the following conditions, and without any unmentioned "
    "factors or causal relationships: Praf has a direct effect on Vank, Vank has a direct effect on Scud, Scud and Vank "
    "have direct effects on Wrenk, Wrenk has a direct effect on Yobb, not Yobb has a direct effect on Glim, and Glim "
    "has a direct effect on Klep. We know that Praf causes Vank, Vank causes Scud, Scud and Vank together cause Wrenk, "
    "Wrenk causes Yobb, not Yobb causes Glim, and Glim causes Klep. Assume not Praf, and based on this assumption, "
    "further suppose not Wrenk. Would Klep occur?";

const std::string_view kTemplateBasic =
    "We know that X causes V1, V1 causes V2, V2 causes V3, and V3 causes V4, V4 causes V5, V5 causes Y. "
    "Would Y occur if not X instead of X?";

const std::string_view kTemplateJoint =
    "We know that X causes V1, V1 causes V2, V2 and V1 together cause V3, V3 causes V4, V4 and X together cause V5, "
    "and V5 causes Y. Would Y occur if not X and not V3?";

const std::string_view kTemplateNested =
    "We know that X causes V1, V1 causes V2, V2 and V1 together cause V3, V3 causes V4, V4 and V2 together cause V5, "
    "and V5 causes Y. Assume not X, and based on this assumption, further suppose not V4. Would Y occur?";

const std::string_view kTemplateConditional =
    "We know that X and V1 together cause V2, V2 causes V3, V3 causes V4, V4 causes V5, V5 causes Y. "
    "We observed V1. Would Y occur if not X instead of X?";

}  // namespace counterbench::fixtures
