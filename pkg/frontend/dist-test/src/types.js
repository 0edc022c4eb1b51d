// Payload shapes of the read-only registry service, plus the composer state.
export const EMPTY_STATE = {
    radical: null,
    assignment: {},
    rules: [],
    abbreviated: false,
};
