/** Recorded payloads from the real engine (seed 11, coarse grid), so the stub
 * API replays exactly what the service would return. */

const fixtures = {
  "calibration": {
    "config": {
      "constraints": {
        "max_false_consider": 0.2,
        "max_false_go": 0.05,
        "max_false_nogo": 0.1
      },
      "endpoint": {
        "family": "binary",
        "lower_is_better": false,
        "name": "response"
      },
      "grid": {
        "gamma_cmv": [
          0.0,
          1.0,
          0.5
        ],
        "gamma_lrv": [
          0.0,
          1.0,
          0.5
        ],
        "lambda_cmv": [
          0.05,
          0.5,
          0.05
        ],
        "lambda_lrv": [
          0.5,
          0.95,
          0.05
        ]
      },
      "objective": "optimal",
      "plan": {
        "accrual_per_month": 1.0,
        "allow_superiority": false,
        "arms": 1,
        "followup_months": 12.0,
        "interim_looks": [
          10,
          20,
          30
        ],
        "max_n": 40,
        "poisson_accrual": false,
        "randomization_ratio": [
          1,
          1
        ],
        "three_decision_interim": false
      },
      "priors": {
        "a": 0.1,
        "b": 0.1
      },
      "profile": {
        "theta_cmv": [
          0.3
        ],
        "theta_eff": [
          0.4
        ],
        "theta_futile": [
          0.2
        ],
        "theta_lrv": [
          0.2
        ]
      },
      "scenarios": [
        {
          "experimental": {
            "response_prob": 0.2
          },
          "label": "futile"
        },
        {
          "experimental": {
            "response_prob": 0.4
          },
          "label": "effective"
        }
      ],
      "simulation": {
        "difference_draws": 100000,
        "n_sims": 1500,
        "seed": 11
      }
    },
    "decision_table": {
      "consider_range": [
        10,
        12
      ],
      "go_bound": 13,
      "looks": [
        10,
        20,
        30,
        40
      ],
      "stop_bounds": [
        0,
        3,
        6,
        9
      ]
    },
    "protocol": "# Trial design summary\n(trimmed for fixture)",
    "result": {
      "constraints": {
        "max_false_consider": 0.2,
        "max_false_go": 0.05,
        "max_false_nogo": 0.1
      },
      "evaluation": "exact",
      "feasible": true,
      "metrics": {
        "cgr": 0.8654766191286952,
        "expected_n_futile": 28.26099602435704,
        "fcr": 0.18264470359591867,
        "fgr": 0.04225868586517561,
        "fngr": 0.03579827979799559
      },
      "n_feasible": 51,
      "n_grid_points": 900,
      "objective": "optimal",
      "objective_value": 0.8654766191286952,
      "oc_effective": {
        "avg_duration_months": null,
        "avg_sample_size": 39.44808556087264,
        "consider_rate": 0.09872510107330665,
        "go_rate": 0.8654766191286952,
        "graduate_rate": 0.0,
        "mc_se": {
          "consider": 0.0,
          "go": 0.0,
          "graduate": 0.0,
          "nogo": 0.0
        },
        "n_sims": 0,
        "nogo_rate": 0.03579827979799559
      },
      "oc_futile": {
        "avg_duration_months": null,
        "avg_sample_size": 28.26099602435704,
        "consider_rate": 0.18264470359591867,
        "go_rate": 0.04225868586517561,
        "graduate_rate": 0.0,
        "mc_se": {
          "consider": 0.0,
          "go": 0.0,
          "graduate": 0.0,
          "nogo": 0.0
        },
        "n_sims": 0,
        "nogo_rate": 0.7750966105389052
      },
      "params": {
        "gamma_cmv": 1.0,
        "gamma_lrv": 0.0,
        "lambda_cmv": 0.15,
        "lambda_lrv": 0.95
      },
      "validation_effective": {
        "avg_duration_months": null,
        "avg_sample_size": 39.486666666666665,
        "consider_rate": 0.106,
        "go_rate": 0.8633333333333333,
        "graduate_rate": 0.0,
        "mc_se": {
          "consider": 0.007948333158593694,
          "go": 0.008869005539476187,
          "graduate": 0.0,
          "nogo": 0.004451682994270985
        },
        "n_sims": 1500,
        "nogo_rate": 0.030666666666666665
      },
      "validation_futile": {
        "avg_duration_months": null,
        "avg_sample_size": 28.006666666666668,
        "consider_rate": 0.18733333333333332,
        "go_rate": 0.036,
        "graduate_rate": 0.0,
        "mc_se": {
          "consider": 0.010074375267828622,
          "go": 0.004809989604978373,
          "graduate": 0.0,
          "nogo": 0.010753466280090204
        },
        "n_sims": 1500,
        "nogo_rate": 0.7766666666666666
      }
    }
  },
  "echo": {
    "constraints": {
      "max_false_consider": 0.2,
      "max_false_go": 0.05,
      "max_false_nogo": 0.1
    },
    "endpoint": {
      "family": "binary",
      "lower_is_better": false,
      "name": "response"
    },
    "grid": {
      "gamma_cmv": [
        0.0,
        1.0,
        0.5
      ],
      "gamma_lrv": [
        0.0,
        1.0,
        0.5
      ],
      "lambda_cmv": [
        0.05,
        0.5,
        0.05
      ],
      "lambda_lrv": [
        0.5,
        0.95,
        0.05
      ]
    },
    "objective": "optimal",
    "plan": {
      "accrual_per_month": 1.0,
      "allow_superiority": false,
      "arms": 1,
      "followup_months": 12.0,
      "interim_looks": [
        10,
        20,
        30
      ],
      "max_n": 40,
      "poisson_accrual": false,
      "randomization_ratio": [
        1,
        1
      ],
      "three_decision_interim": false
    },
    "priors": {
      "a": 0.1,
      "b": 0.1
    },
    "profile": {
      "theta_cmv": [
        0.3
      ],
      "theta_eff": [
        0.4
      ],
      "theta_futile": [
        0.2
      ],
      "theta_lrv": [
        0.2
      ]
    },
    "scenarios": [
      {
        "experimental": {
          "response_prob": 0.2
        },
        "label": "futile"
      },
      {
        "experimental": {
          "response_prob": 0.4
        },
        "label": "effective"
      }
    ],
    "simulation": {
      "difference_draws": 100000,
      "n_sims": 1500,
      "seed": 11
    }
  },
  "rawDraft": {
    "endpoint": {
      "family": "binary"
    },
    "grid": {
      "gamma_cmv": [
        0.0,
        1.0,
        0.5
      ],
      "gamma_lrv": [
        0.0,
        1.0,
        0.5
      ],
      "lambda_cmv": [
        0.05,
        0.5,
        0.05
      ],
      "lambda_lrv": [
        0.5,
        0.95,
        0.05
      ]
    },
    "plan": {
      "interim_looks": [
        10,
        20,
        30
      ],
      "max_n": 40
    },
    "profile": {
      "theta_cmv": 0.3,
      "theta_eff": 0.4,
      "theta_futile": 0.2,
      "theta_lrv": 0.2
    },
    "scenarios": [
      {
        "experimental": {
          "response_prob": 0.2
        },
        "label": "futile"
      },
      {
        "experimental": {
          "response_prob": 0.4
        },
        "label": "effective"
      }
    ],
    "simulation": {
      "n_sims": 1500,
      "seed": 11
    }
  },
  "simulation": {
    "config": {
      "constraints": {
        "max_false_consider": 0.2,
        "max_false_go": 0.05,
        "max_false_nogo": 0.1
      },
      "endpoint": {
        "family": "binary",
        "lower_is_better": false,
        "name": "response"
      },
      "grid": {
        "gamma_cmv": [
          0.0,
          1.0,
          0.5
        ],
        "gamma_lrv": [
          0.0,
          1.0,
          0.5
        ],
        "lambda_cmv": [
          0.05,
          0.5,
          0.05
        ],
        "lambda_lrv": [
          0.5,
          0.95,
          0.05
        ]
      },
      "objective": "optimal",
      "plan": {
        "accrual_per_month": 1.0,
        "allow_superiority": false,
        "arms": 1,
        "followup_months": 12.0,
        "interim_looks": [
          10,
          20,
          30
        ],
        "max_n": 40,
        "poisson_accrual": false,
        "randomization_ratio": [
          1,
          1
        ],
        "three_decision_interim": false
      },
      "priors": {
        "a": 0.1,
        "b": 0.1
      },
      "profile": {
        "theta_cmv": [
          0.3
        ],
        "theta_eff": [
          0.4
        ],
        "theta_futile": [
          0.2
        ],
        "theta_lrv": [
          0.2
        ]
      },
      "scenarios": [
        {
          "experimental": {
            "response_prob": 0.2
          },
          "label": "futile"
        },
        {
          "experimental": {
            "response_prob": 0.4
          },
          "label": "effective"
        }
      ],
      "simulation": {
        "difference_draws": 100000,
        "n_sims": 1500,
        "seed": 11
      }
    },
    "design": {
      "gamma_cmv": 1.0,
      "gamma_lrv": 0.0,
      "lambda_cmv": 0.15,
      "lambda_lrv": 0.95
    },
    "oc_csv": "scenario,design,theta_lrv,theta_cmv,theta_true,go_pct,nogo_pct,consider_pct,graduate_pct,avg_sample_size\r\nfutile,optimal,0.2,0.3,0.2,4.1,79.3,16.5,0.0,28.3\r\neffective,optimal,0.2,0.3,0.4,85.5,3.8,10.7,0.0,39.4\r\n",
    "oc_raw": [
      {
        "avg_duration_months": null,
        "avg_sample_size": 28.26,
        "consider_rate": 0.16533333333333333,
        "go_rate": 0.04133333333333333,
        "graduate_rate": 0.0,
        "mc_se": {
          "consider": 0.009591601264377851,
          "go": 0.005139707442315428,
          "graduate": 0.0,
          "nogo": 0.010454841161093922
        },
        "n_sims": 1500,
        "nogo_rate": 0.7933333333333333,
        "scenario": "futile"
      },
      {
        "avg_duration_months": null,
        "avg_sample_size": 39.446666666666665,
        "consider_rate": 0.10666666666666667,
        "go_rate": 0.8553333333333333,
        "graduate_rate": 0.0,
        "mc_se": {
          "consider": 0.007970315296519074,
          "go": 0.00908251882178882,
          "graduate": 0.0,
          "nogo": 0.004936665541300795
        },
        "n_sims": 1500,
        "nogo_rate": 0.038,
        "scenario": "effective"
      }
    ],
    "oc_table": [
      {
        "avg_sample_size": "28.3",
        "consider_pct": "16.5",
        "design": "optimal",
        "go_pct": "4.1",
        "graduate_pct": "0.0",
        "nogo_pct": "79.3",
        "scenario": "futile",
        "theta_cmv": "0.3",
        "theta_lrv": "0.2",
        "theta_true": "0.2"
      },
      {
        "avg_sample_size": "39.4",
        "consider_pct": "10.7",
        "design": "optimal",
        "go_pct": "85.5",
        "graduate_pct": "0.0",
        "nogo_pct": "3.8",
        "scenario": "effective",
        "theta_cmv": "0.3",
        "theta_lrv": "0.2",
        "theta_true": "0.4"
      }
    ]
  },
  "variantEcho": {
    "constraints": {
      "max_false_consider": 0.2,
      "max_false_go": 0.05,
      "max_false_nogo": 0.1
    },
    "endpoint": {
      "family": "binary",
      "lower_is_better": false,
      "name": "response"
    },
    "grid": {
      "gamma_cmv": [
        0.0,
        1.0,
        0.5
      ],
      "gamma_lrv": [
        0.0,
        1.0,
        0.5
      ],
      "lambda_cmv": [
        0.05,
        0.5,
        0.05
      ],
      "lambda_lrv": [
        0.5,
        0.95,
        0.05
      ]
    },
    "objective": "optimal",
    "plan": {
      "accrual_per_month": 1.0,
      "allow_superiority": false,
      "arms": 1,
      "followup_months": 12.0,
      "interim_looks": [
        10,
        20,
        30
      ],
      "max_n": 40,
      "poisson_accrual": false,
      "randomization_ratio": [
        1,
        1
      ],
      "three_decision_interim": false
    },
    "priors": {
      "a": 0.1,
      "b": 0.1
    },
    "profile": {
      "theta_cmv": [
        0.3
      ],
      "theta_eff": [
        0.45
      ],
      "theta_futile": [
        0.2
      ],
      "theta_lrv": [
        0.2
      ]
    },
    "scenarios": [
      {
        "experimental": {
          "response_prob": 0.2
        },
        "label": "futile"
      },
      {
        "experimental": {
          "response_prob": 0.45
        },
        "label": "effective"
      }
    ],
    "simulation": {
      "difference_draws": 100000,
      "n_sims": 1500,
      "seed": 11
    }
  },
  "variantRaw": {
    "endpoint": {
      "family": "binary"
    },
    "grid": {
      "gamma_cmv": [
        0.0,
        1.0,
        0.5
      ],
      "gamma_lrv": [
        0.0,
        1.0,
        0.5
      ],
      "lambda_cmv": [
        0.05,
        0.5,
        0.05
      ],
      "lambda_lrv": [
        0.5,
        0.95,
        0.05
      ]
    },
    "plan": {
      "interim_looks": [
        10,
        20,
        30
      ],
      "max_n": 40
    },
    "profile": {
      "theta_cmv": 0.3,
      "theta_eff": 0.45,
      "theta_futile": 0.2,
      "theta_lrv": 0.2
    },
    "scenarios": [
      {
        "experimental": {
          "response_prob": 0.2
        },
        "label": "futile"
      },
      {
        "experimental": {
          "response_prob": 0.45
        },
        "label": "effective"
      }
    ],
    "simulation": {
      "n_sims": 1500,
      "seed": 11
    }
  },
  "variantSimulation": {
    "config": {
      "constraints": {
        "max_false_consider": 0.2,
        "max_false_go": 0.05,
        "max_false_nogo": 0.1
      },
      "endpoint": {
        "family": "binary",
        "lower_is_better": false,
        "name": "response"
      },
      "grid": {
        "gamma_cmv": [
          0.0,
          1.0,
          0.5
        ],
        "gamma_lrv": [
          0.0,
          1.0,
          0.5
        ],
        "lambda_cmv": [
          0.05,
          0.5,
          0.05
        ],
        "lambda_lrv": [
          0.5,
          0.95,
          0.05
        ]
      },
      "objective": "optimal",
      "plan": {
        "accrual_per_month": 1.0,
        "allow_superiority": false,
        "arms": 1,
        "followup_months": 12.0,
        "interim_looks": [
          10,
          20,
          30
        ],
        "max_n": 40,
        "poisson_accrual": false,
        "randomization_ratio": [
          1,
          1
        ],
        "three_decision_interim": false
      },
      "priors": {
        "a": 0.1,
        "b": 0.1
      },
      "profile": {
        "theta_cmv": [
          0.3
        ],
        "theta_eff": [
          0.45
        ],
        "theta_futile": [
          0.2
        ],
        "theta_lrv": [
          0.2
        ]
      },
      "scenarios": [
        {
          "experimental": {
            "response_prob": 0.2
          },
          "label": "futile"
        },
        {
          "experimental": {
            "response_prob": 0.45
          },
          "label": "effective"
        }
      ],
      "simulation": {
        "difference_draws": 100000,
        "n_sims": 1500,
        "seed": 11
      }
    },
    "design": {
      "gamma_cmv": 1.0,
      "gamma_lrv": 0.0,
      "lambda_cmv": 0.15,
      "lambda_lrv": 0.95
    },
    "oc_csv": "scenario,design,theta_lrv,theta_cmv,theta_true,go_pct,nogo_pct,consider_pct,graduate_pct,avg_sample_size\r\nfutile,optimal,0.2,0.3,0.2,4.1,79.3,16.5,0.0,28.3\r\neffective,optimal,0.2,0.3,0.45,95.3,0.9,3.8,0.0,39.9\r\n",
    "oc_raw": [
      {
        "avg_duration_months": null,
        "avg_sample_size": 28.26,
        "consider_rate": 0.16533333333333333,
        "go_rate": 0.04133333333333333,
        "graduate_rate": 0.0,
        "mc_se": {
          "consider": 0.009591601264377851,
          "go": 0.005139707442315428,
          "graduate": 0.0,
          "nogo": 0.010454841161093922
        },
        "n_sims": 1500,
        "nogo_rate": 0.7933333333333333,
        "scenario": "futile"
      },
      {
        "avg_duration_months": null,
        "avg_sample_size": 39.85333333333333,
        "consider_rate": 0.038,
        "go_rate": 0.9533333333333334,
        "graduate_rate": 0.0,
        "mc_se": {
          "consider": 0.004936665541300795,
          "go": 0.005446031514714108,
          "graduate": 0.0,
          "nogo": 0.0023932621468831417
        },
        "n_sims": 1500,
        "nogo_rate": 0.008666666666666666,
        "scenario": "effective"
      }
    ],
    "oc_table": [
      {
        "avg_sample_size": "28.3",
        "consider_pct": "16.5",
        "design": "optimal",
        "go_pct": "4.1",
        "graduate_pct": "0.0",
        "nogo_pct": "79.3",
        "scenario": "futile",
        "theta_cmv": "0.3",
        "theta_lrv": "0.2",
        "theta_true": "0.2"
      },
      {
        "avg_sample_size": "39.9",
        "consider_pct": "3.8",
        "design": "optimal",
        "go_pct": "95.3",
        "graduate_pct": "0.0",
        "nogo_pct": "0.9",
        "scenario": "effective",
        "theta_cmv": "0.3",
        "theta_lrv": "0.2",
        "theta_true": "0.45"
      }
    ]
  }
};

export default fixtures;
