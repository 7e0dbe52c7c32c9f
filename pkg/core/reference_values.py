"""Published values the computations are checked against."""

BN_TABLE = {
    135: -0.5417512651, 136: -0.5418690317, 137: -0.5419854885,
    138: -0.5421006603, 139: -0.5422145711, 140: -0.5423272443,
    141: -0.5424387024, 142: -0.5425489682, 143: -0.5426580621,
    144: -0.5427660064, 145: -0.5428728208, 146: -0.5429785257,
    147: -0.5430831405, 148: -0.5431866841, 149: -0.5432891757,
    150: -0.5433906324, 151: -0.5434910728, 152: -0.5435905137,
    153: -0.5436889722, 154: -0.5437864645, 155: -0.5438830066,
}

# eps -> (alpha+, 2 Im(alpha+) e^(4/(3 eps)) sqrt(eps))
VDP_ALPHA_TABLE = {
    0.20: (0.9684 + 0.00153j, 1.07),
    0.17: (0.9733 + 0.00055j, 1.16),
    0.14: (0.9800 + 0.000120j, 1.23),
    0.08: (0.9893 + 1.40e-7j, 1.37),
    0.06: (0.9921 + 6.48e-10j, 1.42),
    0.05: (0.9935 + 8.5e-12j, 1.44),
    0.04: (0.9948 + 1.23e-14j, 1.47),
}

VDP_THEORETICAL_CONSTANT = -0.5813148764
FIT_SQRT_C = -0.5736898877
FIT_SQRT_A = 0.3710889332
FIT_CBRT_C = -0.5891153498
