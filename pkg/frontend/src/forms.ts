// Registration form state and validation; assembles the plain-text
// participant documents the service expects.

import { SaatyGrid } from "./saaty.js";

export interface IdentityForm {
  name: string;
  surname: string;
  profile: string;
  weight: string;
}

export interface ThresholdForm {
  weights: string[];
  indifference: string[];
  preference: string[];
}

export function identityErrors(form: IdentityForm): string[] {
  const problems: string[] = [];
  if (!form.name.trim()) problems.push("name is required");
  const weight = Number(form.weight);
  if (!Number.isFinite(weight) || weight <= 0) {
    problems.push("weight must be a positive number");
  }
  return problems;
}

// q < p per criterion (q = p = 0 means a strict step and is allowed)
export function thresholdErrors(form: ThresholdForm): string[] {
  const problems: string[] = [];
  const n = form.weights.length;
  if (form.indifference.length !== n || form.preference.length !== n) {
    problems.push("weights, indifference and preference must cover every criterion");
    return problems;
  }
  form.weights.forEach((raw, j) => {
    const w = Number(raw);
    if (!Number.isFinite(w) || w <= 0) {
      problems.push(`criterion ${j + 1}: weight must be positive`);
    }
  });
  form.indifference.forEach((rawQ, j) => {
    const q = Number(rawQ);
    const p = Number(form.preference[j]);
    if (!Number.isFinite(q) || !Number.isFinite(p)) {
      problems.push(`criterion ${j + 1}: thresholds must be numbers`);
    } else if (q === 0 && p === 0) {
      // strict step, fine
    } else if (q < 0 || q >= p) {
      problems.push(`criterion ${j + 1}: need 0 <= indifference < preference`);
    }
  });
  return problems;
}

export interface JudgmentForms {
  criteria: SaatyGrid;
  actions: SaatyGrid[];
}

export function judgmentErrors(forms: JudgmentForms, nCriteria: number, nActions: number): string[] {
  const problems: string[] = [];
  if (forms.criteria.order !== nCriteria) {
    problems.push(`criteria grid must be ${nCriteria} x ${nCriteria}`);
  }
  if (forms.actions.length !== nCriteria) {
    problems.push(`need one action grid per criterion (${nCriteria})`);
  }
  forms.actions.forEach((grid, c) => {
    if (grid.order !== nActions) {
      problems.push(`action grid ${c + 1} must be ${nActions} x ${nActions}`);
    } else if (!grid.isComplete()) {
      problems.push(`action grid ${c + 1} has empty cells`);
    }
  });
  if (forms.criteria.order === nCriteria && !forms.criteria.isComplete()) {
    problems.push("criteria grid has empty cells");
  }
  return problems;
}

export function participantDoc(
  identity: IdentityForm,
  params: { thresholds?: ThresholdForm; judgments?: JudgmentForms },
): string {
  const lines = [
    `name: ${identity.name.trim()}`,
    `surname: ${identity.surname.trim() || "-"}`,
    `profile: ${identity.profile.trim() || "-"}`,
    `weight: ${identity.weight.trim()}`,
  ];
  if (params.thresholds) {
    lines.push(`promethee-weights: ${params.thresholds.weights.join(" ")}`);
    lines.push(`promethee-indifference: ${params.thresholds.indifference.join(" ")}`);
    lines.push(`promethee-preference: ${params.thresholds.preference.join(" ")}`);
  }
  if (params.judgments) {
    lines.push(`saaty-criteria: ${params.judgments.criteria.upperTokens().join(" ")}`);
    params.judgments.actions.forEach((grid, c) => {
      lines.push(`saaty-action-${c + 1}: ${grid.upperTokens().join(" ")}`);
    });
  }
  return lines.join("\n") + "\n";
}
